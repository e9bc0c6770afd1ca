#include "knotlattice/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "knotlattice/enumerate.hpp"

namespace knotlattice {

Rational paper_coefficient(int n, int k, int u) {
  if (u < k || u > 3 * n) throw std::invalid_argument("paper_coefficient: need k <= u <= 3n");
  return factorial(u - k) / (factorial(3 * n - k) * power_of_two(3 * n - u));
}

namespace {

void check_shape(const LabelledDiagram& d, int n, int k) {
  if (d.degree() != n || d.label_count() != 3 * n - k)
    throw std::invalid_argument("diagram is not of shape D_{" + std::to_string(n) + "," +
                                std::to_string(k) + "}");
}

RationalVector times(const Rational& c, const RationalVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

}  // namespace

PaperAlpha::PaperAlpha(int n, int k) : n_(n), k_(k) {
  check_labelled_range(n, k);
  space_ = &quotient_space_nk(n, k);
  for (const auto& c : enumerate_classes(n))
    coordinates_[c.key] = c.as_zero ? RationalVector(space_->dimension()) : space_->coordinates(c.key);
}

const RationalVector& PaperAlpha::class_coordinates(ClassKey key) const {
  const auto it = coordinates_.find(key);
  if (it == coordinates_.end()) throw std::invalid_argument("PaperAlpha: class of another degree");
  return it->second;
}

RationalVector PaperAlpha::value(const LabelledDiagram& d) const {
  check_shape(d, n_, k_);
  const CanonicalForm f = canonical_form(d);
  if (f.sign == 0) return RationalVector(dimension());
  return times(paper_coefficient(n_, k_, d.leg_count()) * f.sign, class_coordinates(f.key));
}

DiagramVector alpha_paper(const LabelledDiagram& d, int n, int k) {
  check_labelled_range(n, k);
  check_shape(d, n, k);
  if (d.k() != k || !validate(d).empty())
    throw std::invalid_argument("alpha_paper: diagram is not in D_{n,k}");
  return diagram_vector(d, paper_coefficient(n, k, d.leg_count()));
}

std::string to_string(HeadParity p) { return p == HeadParity::kEven ? "even" : "odd"; }

int heads_at_trivalent(const LabelledDiagram& d) {
  int heads = 0;
  for (const auto& t : d.trivalent())
    for (HalfEdge h : t) heads += h & 1;
  return heads;
}

int tripod_orientation(const LabelledDiagram& d) {
  if (d.trivalent_count() != 1) throw std::invalid_argument("tripod_orientation: need one trivalent vertex");
  int pos[3];
  for (int i = 0; i < 3; ++i) {
    const HalfEdge other = partner(d.trivalent()[0][i]);
    const auto it = std::find(d.legs().begin(), d.legs().end(), other);
    if (it == d.legs().end()) throw std::invalid_argument("tripod_orientation: vertex not next to legs");
    pos[i] = static_cast<int>(it - d.legs().begin());
  }
  const bool agree = (pos[0] < pos[1] && pos[1] < pos[2]) || (pos[1] < pos[2] && pos[2] < pos[0]) ||
                     (pos[2] < pos[0] && pos[0] < pos[1]);
  return agree ? 1 : -1;
}

const DegreeTwoClasses& degree_two_classes() {
  static const DegreeTwoClasses classes = [] {
    DegreeTwoClasses c;
    for (const auto& cls : enumerate_classes(2)) {
      if (cls.legs == 3) c.tripod = cls.key;
      if (cls.legs != 4) continue;
      const auto& legs = cls.representative.legs();
      const auto tail = std::find(legs.begin(), legs.end(), 0) - legs.begin();
      const auto head = std::find(legs.begin(), legs.end(), 1) - legs.begin();
      const auto gap = std::abs(tail - head);
      (gap == 1 || gap == 3 ? c.parallel : c.crossed) = cls.key;
    }
    return c;
  }();
  return classes;
}

PolyakViroAlpha::PolyakViroAlpha(HeadParity weighted)
    : weighted_(weighted),
      parallel_(degree_two_classes().parallel),
      crossed_(degree_two_classes().crossed),
      tripod_(degree_two_classes().tripod) {}

RationalVector PolyakViroAlpha::value(const LabelledDiagram& d) const {
  check_shape(d, 2, 3);
  const ClassKey key = canonical_form(d).key;
  if (key == parallel_) return {Rational(0)};
  if (key == crossed_) return {Rational(1, 24)};
  if (key != tripod_) throw std::invalid_argument("PolyakViroAlpha: diagram is not in D_{2,3}");
  const HeadParity p = heads_at_trivalent(d) % 2 == 0 ? HeadParity::kEven : HeadParity::kOdd;
  if (p != weighted_) return {Rational(0)};
  return {Rational(-tripod_orientation(d), 24)};
}

int relative_orientation(const LabelledDiagram& a, const LabelledDiagram& b) {
  if (a.legs() != b.legs() || a.visible_mask() != b.visible_mask() ||
      a.trivalent_count() != b.trivalent_count() || a.label_count() != b.label_count())
    return 0;
  int s = 1;
  for (int i = 0; i < a.trivalent_count(); ++i) {
    const auto& x = a.trivalent()[i];
    const auto& y = b.trivalent()[i];
    if (x[0] != y[0]) return 0;
    if (x[1] == y[1] && x[2] == y[2]) continue;
    if (x[1] == y[2] && x[2] == y[1]) {
      s = -s;
      continue;
    }
    return 0;
  }
  return s;
}

MutatedAlpha::MutatedAlpha(std::shared_ptr<const AlphaMap> base, LabelledDiagram target, RationalVector delta)
    : base_(std::move(base)), target_(std::move(target)), delta_(std::move(delta)) {
  if (static_cast<int>(delta_.size()) != base_->dimension())
    throw std::invalid_argument("MutatedAlpha: perturbation has the wrong dimension");
}

RationalVector MutatedAlpha::value(const LabelledDiagram& d) const {
  RationalVector v = base_->value(d);
  const int s = relative_orientation(target_, d);
  if (s != 0) axpy(v, Rational(s), delta_);
  return v;
}

std::unique_ptr<AlphaMap> make_alpha(const std::string& name, int n, int k, HeadParity parity) {
  if (name == "paper") return std::make_unique<PaperAlpha>(n, k);
  if (name == "polyak-viro") {
    if (n != 2 || k != 3) throw std::invalid_argument("the polyak-viro map is defined on D_{2,3} only");
    return std::make_unique<PolyakViroAlpha>(parity);
  }
  throw std::invalid_argument("unknown alpha map '" + name + "'");
}

bool SumIdentityReport::ok() const {
  for (const auto& c : classes)
    if (!c.ok) return false;
  return true;
}

SumIdentityReport verify_sum_identity(int n, int k) {
  check_labelled_range(n, k);
  SumIdentityReport report;
  report.n = n;
  report.k = k;
  std::vector<Rational> coefficient(2 * n + 1);
  for (int u = k; u <= 2 * n; ++u) coefficient[u] = paper_coefficient(n, k, u);

  std::map<ClassKey, std::pair<std::uint64_t, Rational>> sums;
  for_each_labelled(n, k, [&](const LabelledDiagram& d) {
    const CanonicalForm f = canonical_form(d);
    auto& slot = sums[f.key];
    ++slot.first;
    if (f.sign != 0) slot.second += coefficient[d.leg_count()] * f.sign;
    ++report.diagrams;
  });
  for (const auto& c : labelled_classes(n, k)) {
    SumIdentityClass r;
    r.key = c.key;
    r.legs = c.legs;
    r.automorphisms = c.automorphisms;
    r.as_zero = c.as_zero;
    const auto it = sums.find(c.key);
    if (it != sums.end()) {
      r.labellings = it->second.first;
      r.sum = it->second.second;
      sums.erase(it);
    }
    r.expected = c.as_zero ? Rational(0) : Rational(1, c.automorphisms);
    r.ok = r.sum == r.expected;
    report.classes.push_back(std::move(r));
  }
  // Anything left over was produced for a class that should not occur.
  for (const auto& [key, s] : sums) {
    SumIdentityClass r;
    r.key = key;
    r.legs = key_leg_count(key);
    r.labellings = s.first;
    r.sum = s.second;
    r.ok = false;
    report.classes.push_back(std::move(r));
  }
  return report;
}

LatticeBasis lattice_generators(int n, int k) {
  check_labelled_range(n, k);
  LatticeBasis b;
  b.n = n;
  b.k = k;
  const QuotientSpace& q = quotient_space_nk(n, k);
  for (const auto& c : enumerate_classes(n)) {
    if (c.as_zero || c.legs < k || !c.four_leg) continue;
    b.classes.push_back(c.key);
    b.generators.push_back(times(paper_coefficient(n, k, c.legs), q.coordinates(c.key)));
  }
  b.lattice = RationalLattice(b.generators, q.dimension());
  return b;
}

MembershipResult lattice_membership(const LatticeBasis& basis, const RationalVector& v) {
  MembershipResult r;
  r.in_span = basis.lattice.in_rational_span(v);
  r.member = r.in_span && basis.lattice.contains(v, &r.coefficients);
  return r;
}

ApproximateMembership lattice_membership(const LatticeBasis& basis, const std::vector<double>& v,
                                         const std::vector<double>& sigma, double tolerance_sigmas) {
  ApproximateMembership r;
  const auto nearest = basis.lattice.nearest(v, sigma);
  r.nearest = nearest.point;
  r.residual = nearest.residual;
  r.sigma = sigma;
  r.sigma.resize(r.residual.size(), 0.0);
  r.within = true;
  for (std::size_t i = 0; i < r.residual.size(); ++i)
    if (std::abs(r.residual[i]) > tolerance_sigmas * r.sigma[i] + 1e-12) r.within = false;
  return r;
}

}  // namespace knotlattice
