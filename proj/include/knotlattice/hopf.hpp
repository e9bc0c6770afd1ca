#pragma once

// Hopf structure of the completed diagram algebra, truncated at degree 3.

#include <map>
#include <utility>
#include <vector>

#include "knotlattice/algebra.hpp"

namespace knotlattice {

constexpr int kMaxAlgebraDegree = 3;

// Connected sum of the representatives cut before legs `cut_a` and `cut_b`.
LabelledDiagram connected_sum(const LabelledDiagram& a, int cut_a, const LabelledDiagram& b, int cut_b);

// Product of two classes in normal form (basis of A_{n_a+n_b}).  Every cut
// choice is reduced and compared; a discrepancy throws std::logic_error.
// Requires n_a + n_b <= 3.
DiagramVector product(ClassKey a, ClassKey b);

// Degree-d part stored at index d; the degree-0 part uses kEmptyKey.
struct GradedElement {
  std::vector<DiagramVector> parts;

  explicit GradedElement(int max_degree = kMaxAlgebraDegree) : parts(max_degree + 1) {}
  static GradedElement scalar(const Rational& c, int max_degree = kMaxAlgebraDegree);
  static GradedElement of(const DiagramVector& v, int max_degree = kMaxAlgebraDegree);

  int max_degree() const { return static_cast<int>(parts.size()) - 1; }
  Rational constant() const;
};

GradedElement normalize(const GradedElement& x);
GradedElement operator+(const GradedElement& a, const GradedElement& b);
GradedElement operator-(const GradedElement& a, const GradedElement& b);
GradedElement scaled(const GradedElement& a, const Rational& c);
// Truncated at the smaller of the two maximal degrees; results in normal form.
GradedElement product(const GradedElement& a, const GradedElement& b);
bool equal_in_algebra(const GradedElement& a, const GradedElement& b);

GradedElement exp_truncated(const GradedElement& p);
// Throws std::invalid_argument unless the constant term is 1.
GradedElement log_truncated(const GradedElement& x);

using TensorVector = std::map<std::pair<ClassKey, ClassKey>, Rational>;

// Sum over subsets of connected components: Gamma_S (x) Gamma_rest.
TensorVector coproduct(ClassKey key);
TensorVector coproduct(const DiagramVector& v);
TensorVector tensor(const DiagramVector& a, const DiagramVector& b);
TensorVector tensor_product(const TensorVector& a, const TensorVector& b);

// Coordinates of a tensor in (basis of A_i) (x) (basis of A_j), keyed by
// (i, j) and flattened row-major.
using ReducedTensor = std::map<std::pair<int, int>, RationalVector>;
ReducedTensor reduce(const TensorVector& t);
bool equal_in_algebra(const TensorVector& a, const TensorVector& b);

bool is_grouplike_up_to(const GradedElement& x, int n);
bool is_primitive_up_to(const GradedElement& x, int n);

// Normal forms of connected classes of degree d: a spanning set of the
// primitive part.
std::vector<DiagramVector> primitive_generators(int d);

}  // namespace knotlattice
