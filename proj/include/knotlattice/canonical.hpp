#pragma once

// Isomorphism classes of diagrams.
//
// A class is identified by a 64-bit key: the lexicographically smallest
// sorted edge list over all vertex numberings that put legs first in a
// rotation of the cyclic order.  The key determines a representative with
// every edge visible, edges numbered in key order, each edge directed from
// its smaller to its larger vertex and every trivalent vertex oriented by
// increasing half-edge.

#include <cstdint>
#include <vector>

#include "knotlattice/diagram.hpp"

namespace knotlattice {

using ClassKey = std::uint64_t;

// The empty diagram (degree 0, the unit of the algebra).  No real diagram
// encodes to 0 because the leg count occupies the top bits.
constexpr ClassKey kEmptyKey = 0;

// Canonicalization supports at most this many vertices and edges.
constexpr int kMaxVertices = 8;
constexpr int kMaxEdges = 9;

struct CanonicalForm {
  ClassKey key = kEmptyKey;
  // Orientation of the input relative to the representative; 0 when the
  // class has an orientation-reversing automorphism (it vanishes by AS).
  int sign = 1;
  int automorphisms = 1;
};

// Throws std::invalid_argument if a visible edge has an unused half-edge,
// an edge is a loop, or the size limits are exceeded.  Diagrams without
// vertices map to kEmptyKey.
CanonicalForm canonical_form(const LabelledDiagram& d);

int key_leg_count(ClassKey key);
int key_edge_count(ClassKey key);
int key_degree(ClassKey key);

LabelledDiagram representative(ClassKey key);

// Every automorphism of the representative as a permutation of its
// half-edges (ignoring vertex orientations).  The identity comes first.
std::vector<std::vector<HalfEdge>> automorphisms(ClassKey key);

struct DiagramClass {
  ClassKey key = kEmptyKey;
  LabelledDiagram representative;
  int degree = 0;
  int legs = 0;
  int automorphisms = 1;
  bool as_zero = false;
  bool triply_connected = true;
  bool four_leg = true;
  bool chords_or_tripods = true;
  int components = 0;

  bool is_chord_diagram() const { return representative.trivalent_count() == 0; }
};

DiagramClass make_class(ClassKey key);

// All classes of degree n (1 <= n <= 3) whose every component has a leg,
// sorted by key.  Classes that vanish by AS are included and flagged.
std::vector<DiagramClass> enumerate_classes(int n);

}  // namespace knotlattice
