#pragma once

// Coefficient maps alpha on D_{n,k}, the counting identity, and the lattice
// spanned by the scaled classes.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knotlattice/algebra.hpp"
#include "knotlattice/linalg.hpp"

namespace knotlattice {

// alpha(d) for d in D_{n,k}, extended by AS: reversing one vertex
// orientation negates the value.
class AlphaMap {
 public:
  virtual ~AlphaMap() = default;
  virtual int degree() const = 0;
  virtual int k() const = 0;
  // Length of value vectors.
  virtual int dimension() const = 0;
  virtual RationalVector value(const LabelledDiagram& d) const = 0;
  virtual std::string name() const = 0;
  // True if value() depends only on the oriented isomorphism class.
  virtual bool class_constant() const { return false; }
};

// (u-k)! / ((3n-k)! 2^(3n-u))
Rational paper_coefficient(int n, int k, int u);

// alpha(d) = paper_coefficient * [d], valued in coordinates of A_n^k.
class PaperAlpha : public AlphaMap {
 public:
  PaperAlpha(int n, int k);
  int degree() const override { return n_; }
  int k() const override { return k_; }
  int dimension() const override { return space_->dimension(); }
  RationalVector value(const LabelledDiagram& d) const override;
  std::string name() const override { return "paper"; }
  bool class_constant() const override { return true; }

  const QuotientSpace& space() const { return *space_; }
  // Coordinates of one class in A_n^k; zero for classes that vanish by AS.
  const RationalVector& class_coordinates(ClassKey key) const;

 private:
  int n_;
  int k_;
  const QuotientSpace* space_;
  std::map<ClassKey, RationalVector> coordinates_;
};

// Checks membership in D_{n,k} and returns the coefficient times the class
// (before any quotient).  Throws std::invalid_argument otherwise.
DiagramVector alpha_paper(const LabelledDiagram& d, int n, int k);

// The classes of degree 2 that lie in D_{2,k} for some k.
struct DegreeTwoClasses {
  ClassKey parallel = kEmptyKey;  // two chords with adjacent ends
  ClassKey crossed = kEmptyKey;
  ClassKey tripod = kEmptyKey;    // one trivalent vertex, three legs
};
const DegreeTwoClasses& degree_two_classes();

// The scalar map on D_{2,3}: 0 on the parallel chords, 1/24 on the crossed
// chords, and on the tripod -1/24 or 0 according to the parity of the number
// of edges directed towards the trivalent vertex.  The sign follows the
// vertex orientation relative to the cyclic order of the legs.
enum class HeadParity { kEven, kOdd };
std::string to_string(HeadParity p);

class PolyakViroAlpha : public AlphaMap {
 public:
  // `weighted` is the parity class that receives -1/24.
  explicit PolyakViroAlpha(HeadParity weighted = HeadParity::kEven);
  int degree() const override { return 2; }
  int k() const override { return 3; }
  int dimension() const override { return 1; }
  RationalVector value(const LabelledDiagram& d) const override;
  std::string name() const override { return "polyak-viro"; }

 private:
  HeadParity weighted_;
  ClassKey parallel_;
  ClassKey crossed_;
  ClassKey tripod_;
};

// Number of edges whose head (odd half-edge) lies at a trivalent vertex.
int heads_at_trivalent(const LabelledDiagram& d);
// +1 if the single trivalent vertex's orientation matches the cyclic order of
// the legs it meets, -1 otherwise.  Requires a one-vertex tripod.
int tripod_orientation(const LabelledDiagram& d);

// Orientation of b relative to a when both have the same legs and the same
// vertex sets: +1 / -1; 0 when the underlying labelled structures differ.
int relative_orientation(const LabelledDiagram& a, const LabelledDiagram& b);

// base + delta on the diagram `target` (and -delta on its reversals).
class MutatedAlpha : public AlphaMap {
 public:
  MutatedAlpha(std::shared_ptr<const AlphaMap> base, LabelledDiagram target, RationalVector delta);
  int degree() const override { return base_->degree(); }
  int k() const override { return base_->k(); }
  int dimension() const override { return base_->dimension(); }
  RationalVector value(const LabelledDiagram& d) const override;
  std::string name() const override { return "mutated-" + base_->name(); }

  const LabelledDiagram& target() const { return target_; }

 private:
  std::shared_ptr<const AlphaMap> base_;
  LabelledDiagram target_;
  RationalVector delta_;
};

std::unique_ptr<AlphaMap> make_alpha(const std::string& name, int n, int k,
                                     HeadParity parity = HeadParity::kEven);

// --- Counting identity --------------------------------------------------------

struct SumIdentityClass {
  ClassKey key = kEmptyKey;
  int legs = 0;
  int automorphisms = 1;
  bool as_zero = false;
  std::uint64_t labellings = 0;
  Rational sum;       // signed sum of alpha over labellings, as a multiple of [class]
  Rational expected;  // 1/|Gamma| (0 when the class vanishes by AS)
  bool ok = false;
};

struct SumIdentityReport {
  int n = 0;
  int k = 0;
  std::uint64_t diagrams = 0;
  std::vector<SumIdentityClass> classes;
  bool ok() const;
};

// Enumerates D_{n,k}, canonicalizes every diagram independently and sums
// the paper coefficients with their orientation signs per class.
SumIdentityReport verify_sum_identity(int n, int k);

// --- Lattice ----------------------------------------------------------------

struct LatticeBasis {
  int n = 0;
  int k = 0;
  std::vector<ClassKey> classes;             // u >= k, four-leg property
  std::vector<RationalVector> generators;    // paper_coefficient * coordinates in A_n^k
  RationalLattice lattice;
};

LatticeBasis lattice_generators(int n, int k);

struct MembershipResult {
  bool member = false;
  bool in_span = false;
  std::vector<Integer> coefficients;  // in lattice.basis() when member
};
MembershipResult lattice_membership(const LatticeBasis& basis, const RationalVector& v);

struct ApproximateMembership {
  std::vector<double> nearest;
  std::vector<double> residual;
  std::vector<double> sigma;
  bool within = false;  // |residual_i| <= tolerance_sigmas * sigma_i (+ 1e-12)
};
ApproximateMembership lattice_membership(const LatticeBasis& basis, const std::vector<double>& v,
                                         const std::vector<double>& sigma, double tolerance_sigmas);

}  // namespace knotlattice
