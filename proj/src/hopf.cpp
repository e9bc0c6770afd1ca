#include "knotlattice/hopf.hpp"

#include <mutex>
#include <stdexcept>

#include "knotlattice/enumerate.hpp"

namespace knotlattice {

namespace {

std::vector<HalfEdge> rotated(const std::vector<HalfEdge>& legs, int start, int shift) {
  std::vector<HalfEdge> out;
  const int u = static_cast<int>(legs.size());
  for (int i = 0; i < u; ++i) out.push_back(static_cast<HalfEdge>(legs[(start + i) % u] + shift));
  return out;
}

const QuotientSpace* space_for(int degree) {
  return degree == 0 ? nullptr : &quotient_space(degree);
}

DiagramVector normal_form_any(const DiagramVector& v, int degree) {
  if (degree == 0) return v;
  return quotient_space(degree).normal_form(v);
}

}  // namespace

LabelledDiagram connected_sum(const LabelledDiagram& a, int cut_a, const LabelledDiagram& b, int cut_b) {
  if (a.vertex_count() == 0) return b;
  if (b.vertex_count() == 0) return a;
  const int shift = 2 * a.label_count();
  auto legs = rotated(a.legs(), cut_a, 0);
  for (HalfEdge h : rotated(b.legs(), cut_b, shift)) legs.push_back(h);
  auto triples = a.trivalent();
  for (const auto& t : b.trivalent())
    triples.push_back({static_cast<HalfEdge>(t[0] + shift), static_cast<HalfEdge>(t[1] + shift),
                       static_cast<HalfEdge>(t[2] + shift)});
  const int n = a.degree() + b.degree();
  const int labels = a.label_count() + b.label_count();
  return LabelledDiagram(n, 3 * n - labels, std::move(legs), std::move(triples));
}

DiagramVector product(ClassKey a, ClassKey b) {
  if (a == kEmptyKey) return {{b, Rational(1)}};
  if (b == kEmptyKey) return {{a, Rational(1)}};
  const int n = key_degree(a) + key_degree(b);
  if (n > kMaxAlgebraDegree) throw std::out_of_range("product: total degree above 3");

  static std::mutex mutex;
  static std::map<std::pair<ClassKey, ClassKey>, DiagramVector> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find({a, b}); it != cache.end()) return it->second;
  }
  const LabelledDiagram ra = representative(a);
  const LabelledDiagram rb = representative(b);
  DiagramVector result;
  if (canonical_form(ra).sign != 0 && canonical_form(rb).sign != 0) {
    const QuotientSpace& q = quotient_space(n);
    const RationalVector base = q.coordinates(diagram_vector(connected_sum(ra, 0, rb, 0)));
    for (int i = 0; i < ra.leg_count(); ++i)
      for (int j = 0; j < rb.leg_count(); ++j)
        if (q.coordinates(diagram_vector(connected_sum(ra, i, rb, j))) != base)
          throw std::logic_error("connected sum depends on the cut (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
    for (std::size_t i = 0; i < base.size(); ++i) add_term(result, q.basis()[i], base[i]);
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(std::make_pair(a, b), std::move(result)).first->second;
}

GradedElement GradedElement::scalar(const Rational& c, int max_degree) {
  GradedElement x(max_degree);
  add_term(x.parts[0], kEmptyKey, c);
  return x;
}

GradedElement GradedElement::of(const DiagramVector& v, int max_degree) {
  GradedElement x(max_degree);
  for (const auto& [key, c] : v) {
    const int d = key_degree(key);
    if (d > max_degree) throw std::out_of_range("GradedElement: term above the truncation degree");
    add_term(x.parts[d], key, c);
  }
  return x;
}

Rational GradedElement::constant() const {
  const auto it = parts[0].find(kEmptyKey);
  return it == parts[0].end() ? Rational(0) : it->second;
}

GradedElement normalize(const GradedElement& x) {
  GradedElement out(x.max_degree());
  for (int d = 0; d <= x.max_degree(); ++d) out.parts[d] = normal_form_any(x.parts[d], d);
  return out;
}

GradedElement operator+(const GradedElement& a, const GradedElement& b) {
  GradedElement out(std::min(a.max_degree(), b.max_degree()));
  for (int d = 0; d <= out.max_degree(); ++d) out.parts[d] = a.parts[d] + b.parts[d];
  return out;
}

GradedElement operator-(const GradedElement& a, const GradedElement& b) {
  return a + scaled(b, -1);
}

GradedElement scaled(const GradedElement& a, const Rational& c) {
  GradedElement out(a.max_degree());
  for (int d = 0; d <= a.max_degree(); ++d) out.parts[d] = scaled(a.parts[d], c);
  return out;
}

GradedElement product(const GradedElement& a, const GradedElement& b) {
  GradedElement out(std::min(a.max_degree(), b.max_degree()));
  for (int i = 0; i <= out.max_degree(); ++i)
    for (int j = 0; i + j <= out.max_degree(); ++j)
      for (const auto& [ka, ca] : a.parts[i])
        for (const auto& [kb, cb] : b.parts[j]) add_scaled(out.parts[i + j], ca * cb, product(ka, kb));
  return normalize(out);
}

bool equal_in_algebra(const GradedElement& a, const GradedElement& b) {
  const GradedElement diff = normalize(a - b);
  for (const auto& p : diff.parts)
    if (!p.empty()) return false;
  return true;
}

GradedElement exp_truncated(const GradedElement& p) {
  if (sgn(p.constant()) != 0) throw std::invalid_argument("exp_truncated: constant term must be 0");
  const int n = p.max_degree();
  GradedElement result = GradedElement::scalar(1, n);
  GradedElement term = GradedElement::scalar(1, n);
  for (int m = 1; m <= n; ++m) {
    term = scaled(product(term, p), Rational(1, m));
    result = result + term;
  }
  return normalize(result);
}

GradedElement log_truncated(const GradedElement& x) {
  if (x.constant() != 1) throw std::invalid_argument("log_truncated: constant term must be 1");
  const int n = x.max_degree();
  const GradedElement y = x - GradedElement::scalar(1, n);
  GradedElement result(n);
  GradedElement power = GradedElement::scalar(1, n);
  for (int m = 1; m <= n; ++m) {
    power = product(power, y);
    result = result + scaled(power, Rational(m % 2 == 1 ? 1 : -1, m));
  }
  return normalize(result);
}

TensorVector coproduct(ClassKey key) {
  TensorVector out;
  if (key == kEmptyKey) {
    out[{kEmptyKey, kEmptyKey}] = 1;
    return out;
  }
  const LabelledDiagram rep = representative(key);
  if (canonical_form(rep).sign == 0) return out;
  const auto labels = component_labels(rep);
  const int components = component_count(rep);
  const int labels_n = rep.label_count();
  auto part = [&](unsigned mask) {
    std::vector<HalfEdge> legs;
    for (int i = 0; i < rep.leg_count(); ++i)
      if (mask >> labels[i] & 1u) legs.push_back(rep.legs()[i]);
    std::vector<Triple> triples;
    for (int i = 0; i < rep.trivalent_count(); ++i)
      if (mask >> labels[rep.leg_count() + i] & 1u) triples.push_back(rep.trivalent()[i]);
    const int n = static_cast<int>(legs.size() + triples.size()) / 2;
    return LabelledDiagram(n, 3 * n - labels_n, std::move(legs), std::move(triples));
  };
  const unsigned all = (1u << components) - 1;
  for (unsigned mask = 0; mask <= all; ++mask) {
    const CanonicalForm left = canonical_form(part(mask));
    const CanonicalForm right = canonical_form(part(all & ~mask));
    const int s = left.sign * right.sign;
    if (s == 0) continue;
    auto& slot = out[{left.key, right.key}];
    slot += s;
    if (sgn(slot) == 0) out.erase({left.key, right.key});
  }
  return out;
}

namespace {

void add_tensor_term(TensorVector& t, std::pair<ClassKey, ClassKey> key, const Rational& c) {
  if (sgn(c) == 0) return;
  auto& slot = t[key];
  slot += c;
  if (sgn(slot) == 0) t.erase(key);
}

}  // namespace

TensorVector coproduct(const DiagramVector& v) {
  TensorVector out;
  for (const auto& [key, c] : v)
    for (const auto& [pair, x] : coproduct(key)) add_tensor_term(out, pair, c * x);
  return out;
}

TensorVector tensor(const DiagramVector& a, const DiagramVector& b) {
  TensorVector out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) add_tensor_term(out, {ka, kb}, ca * cb);
  return out;
}

TensorVector tensor_product(const TensorVector& a, const TensorVector& b) {
  TensorVector out;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      if (key_degree(pa.first) + key_degree(pb.first) > kMaxAlgebraDegree ||
          key_degree(pa.second) + key_degree(pb.second) > kMaxAlgebraDegree)
        throw std::out_of_range("tensor_product: factor degree above 3");
      const DiagramVector left = product(pa.first, pb.first);
      const DiagramVector right = product(pa.second, pb.second);
      for (const auto& [kl, cl] : left)
        for (const auto& [kr, cr] : right) add_tensor_term(out, {kl, kr}, ca * cb * cl * cr);
    }
  return out;
}

ReducedTensor reduce(const TensorVector& t) {
  ReducedTensor out;
  auto coords = [](ClassKey k) -> RationalVector {
    const int d = key_degree(k);
    if (d == 0) return {Rational(1)};
    return space_for(d)->coordinates(k);
  };
  for (const auto& [pair, c] : t) {
    const RationalVector x = coords(pair.first);
    const RationalVector y = coords(pair.second);
    auto& slot = out[{key_degree(pair.first), key_degree(pair.second)}];
    slot.resize(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) slot[i * y.size() + j] += c * x[i] * y[j];
  }
  for (auto it = out.begin(); it != out.end();) {
    if (is_zero(it->second))
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

bool equal_in_algebra(const TensorVector& a, const TensorVector& b) {
  TensorVector diff = a;
  for (const auto& [pair, c] : b) add_tensor_term(diff, pair, -c);
  return reduce(diff).empty();
}

namespace {

TensorVector truncated(const TensorVector& t, int n) {
  TensorVector out;
  for (const auto& [pair, c] : t)
    if (key_degree(pair.first) + key_degree(pair.second) <= n) out[pair] = c;
  return out;
}

DiagramVector flatten(const GradedElement& x) {
  DiagramVector out;
  for (const auto& p : x.parts) out = out + p;
  return out;
}

}  // namespace

bool is_grouplike_up_to(const GradedElement& x, int n) {
  if (x.constant() != 1) return false;
  const DiagramVector v = flatten(x);
  return equal_in_algebra(truncated(coproduct(v), n), truncated(tensor(v, v), n));
}

bool is_primitive_up_to(const GradedElement& x, int n) {
  if (sgn(x.constant()) != 0) return false;
  const DiagramVector v = flatten(x);
  const DiagramVector one{{kEmptyKey, Rational(1)}};
  TensorVector expected = tensor(v, one);
  for (const auto& [pair, c] : tensor(one, v)) add_tensor_term(expected, pair, c);
  return equal_in_algebra(truncated(coproduct(v), n), truncated(expected, n));
}

std::vector<DiagramVector> primitive_generators(int d) {
  std::vector<DiagramVector> out;
  const QuotientSpace& q = quotient_space(d);
  for (const auto& c : enumerate_classes(d)) {
    if (c.as_zero || c.components != 1) continue;
    DiagramVector v = q.normal_form({{c.key, Rational(1)}});
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace knotlattice
