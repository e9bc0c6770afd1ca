#pragma once

// Rational diagram spaces: AS normalization, STU and IHX relations, the
// quotients A_n and A_n^k, and reduction to chord diagrams.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "knotlattice/canonical.hpp"
#include "knotlattice/diagram.hpp"
#include "knotlattice/linalg.hpp"
#include "knotlattice/rational.hpp"

namespace knotlattice {

// Finite combination of classes; zero coefficients and classes that vanish
// by AS are never stored.
using DiagramVector = std::map<ClassKey, Rational>;

void add_term(DiagramVector& v, ClassKey key, const Rational& c);
DiagramVector& add_scaled(DiagramVector& v, const Rational& c, const DiagramVector& w);
DiagramVector scaled(const DiagramVector& v, const Rational& c);
DiagramVector operator+(const DiagramVector& a, const DiagramVector& b);
DiagramVector operator-(const DiagramVector& a, const DiagramVector& b);

struct SignedClass {
  ClassKey key = kEmptyKey;
  int sign = 1;  // 0 when the class vanishes by AS
};
SignedClass as_sign_normalize(const LabelledDiagram& d);

// c * [d], AS-normalized.
DiagramVector diagram_vector(const LabelledDiagram& d, const Rational& c = 1);

// "coefficient<TAB>record" lines; records are written on one line with the
// four fields separated by " | ".
std::string serialize(const DiagramVector& v);

// --- Local moves -----------------------------------------------------------

// The two diagrams produced by resolving the trivalent vertex next to leg
// position `leg` of d.  With that vertex oriented (h, x, y), h on the edge to
// the leg, `u` replaces the leg by the pair (y, x) in the cyclic order and
// `s` by (x, y); STU reads d = u - s.  The edge to the leg becomes absent.
struct StuResolution {
  LabelledDiagram u;
  LabelledDiagram s;
};
// Empty if the leg at that position is not attached to a trivalent vertex.
std::optional<StuResolution> stu_resolve(const LabelledDiagram& d, int leg);

// The three diagrams of the Jacobi form of IHX at the edge with label
// `edge` (both ends trivalent): with outer half-edges a < b < c < d the
// vertices become ((2e, a, b), (2e+1, c, d)), ((2e, b, c), (2e+1, a, d)),
// ((2e, c, a), (2e+1, b, d)), where 2e and 2e+1 are the halves of the edge.
// Terms that would contain a loop are omitted (they vanish by AS).
std::vector<LabelledDiagram> ihx_terms(const LabelledDiagram& d, int edge);
bool is_internal_edge(const LabelledDiagram& d, int edge);

std::vector<DiagramVector> stu_relations(int n);
std::vector<DiagramVector> ihx_relations(int n);

// --- Quotients -------------------------------------------------------------

class QuotientSpace {
 public:
  // A_n when k is empty, A_n^k otherwise.  1 <= n <= 3.
  static QuotientSpace build(int n, std::optional<int> k = std::nullopt);

  int degree() const { return n_; }
  std::optional<int> k() const { return k_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<ClassKey>& basis() const { return basis_; }
  const std::vector<ClassKey>& columns() const { return columns_; }
  int relation_count() const { return relation_count_; }

  // Coordinates in basis(); throws std::invalid_argument for classes of a
  // different degree.
  RationalVector coordinates(const DiagramVector& v) const;
  RationalVector coordinates(ClassKey key) const;
  // The same element written on the basis classes.
  DiagramVector normal_form(const DiagramVector& v) const;
  bool is_zero(const DiagramVector& v) const;

 private:
  RationalVector column_vector(const DiagramVector& v) const;

  int n_ = 0;
  std::optional<int> k_;
  std::vector<ClassKey> columns_;
  std::map<ClassKey, int> column_of_;
  std::vector<ClassKey> basis_;
  std::vector<int> basis_columns_;
  RowEchelon echelon_;
  int relation_count_ = 0;
};

// Built once per (n, k) and shared; thread-safe.
const QuotientSpace& quotient_space(int n);
const QuotientSpace& quotient_space_nk(int n, int k);

// Repeated STU at the trivalent vertex next to the first leg (in the
// representative's cyclic order) that meets one.  Throws std::logic_error if
// a diagram has trivalent vertices but none next to a leg.
DiagramVector reduce_to_chords(ClassKey key);
DiagramVector reduce_to_chords(const DiagramVector& v);

}  // namespace knotlattice
