#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "knotlattice/canonical.hpp"
#include "knotlattice/diagram.hpp"

namespace knotlattice {

// Throws std::out_of_range unless 1 <= n <= 3 and 0 <= k <= 2n.
void check_labelled_range(int n, int k);

// Classes that occur in D_{n,k}: triply connected with at least k legs.
std::vector<DiagramClass> labelled_classes(int n, int k);

// Every labelled diagram of D_{n,k} exactly once.  Order: classes by key,
// then labellings in lexicographic order of the image of the
// representative's half-edges.  Each diagram carries the orientation
// transported from the class representative.
void for_each_labelled(int n, int k, const std::function<void(const LabelledDiagram&)>& fn);

// The labellings of one class of labelled_classes(n, k), in the same order.
void for_each_labelling(const DiagramClass& cls, int n, int k,
                        const std::function<void(const LabelledDiagram&)>& fn);

std::vector<LabelledDiagram> enumerate_labelled(int n, int k);

// Number of labellings of a class in D_{n,k}:
// (3n-k)!/(u-k)! * 2^(3n-u) / |Gamma|.
std::uint64_t labelling_count(const DiagramClass& c, int k);

}  // namespace knotlattice
