#include "knotlattice/algebra.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "knotlattice/enumerate.hpp"

namespace knotlattice {

void add_term(DiagramVector& v, ClassKey key, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = v.emplace(key, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) v.erase(it);
}

DiagramVector& add_scaled(DiagramVector& v, const Rational& c, const DiagramVector& w) {
  for (const auto& [key, x] : w) add_term(v, key, c * x);
  return v;
}

DiagramVector scaled(const DiagramVector& v, const Rational& c) {
  DiagramVector out;
  return add_scaled(out, c, v);
}

DiagramVector operator+(const DiagramVector& a, const DiagramVector& b) {
  DiagramVector out = a;
  return add_scaled(out, 1, b);
}

DiagramVector operator-(const DiagramVector& a, const DiagramVector& b) {
  DiagramVector out = a;
  return add_scaled(out, -1, b);
}

SignedClass as_sign_normalize(const LabelledDiagram& d) {
  const CanonicalForm f = canonical_form(d);
  return {f.key, f.sign};
}

DiagramVector diagram_vector(const LabelledDiagram& d, const Rational& c) {
  DiagramVector v;
  const SignedClass s = as_sign_normalize(d);
  if (s.sign != 0) add_term(v, s.key, c * s.sign);
  return v;
}

std::string serialize(const DiagramVector& v) {
  std::string out;
  for (const auto& [key, c] : v) {
    std::string record = to_record(representative(key));
    std::string flat;
    for (char ch : record) {
      if (ch == '\n')
        flat += " | ";
      else
        flat += ch;
    }
    out += to_fraction_string(c) + "\t" + flat + "\n";
  }
  return out;
}

std::optional<StuResolution> stu_resolve(const LabelledDiagram& d, int leg) {
  if (leg < 0 || leg >= d.leg_count()) throw std::out_of_range("stu_resolve: leg position");
  const HalfEdge hl = d.legs()[leg];
  const HalfEdge ht = partner(hl);
  std::vector<Triple> rest;
  std::optional<Triple> vertex;
  for (const auto& t : d.trivalent()) {
    if (!vertex && std::find(t.begin(), t.end(), ht) != t.end()) {
      Triple r = t;
      std::rotate(r.begin(), std::find(r.begin(), r.end(), ht), r.end());
      vertex = r;
    } else {
      rest.push_back(t);
    }
  }
  if (!vertex) return std::nullopt;
  const HalfEdge x = (*vertex)[1];
  const HalfEdge y = (*vertex)[2];
  auto with_pair = [&](HalfEdge first, HalfEdge second) {
    std::vector<HalfEdge> legs;
    for (int i = 0; i < d.leg_count(); ++i) {
      if (i == leg) {
        legs.push_back(first);
        legs.push_back(second);
      } else {
        legs.push_back(d.legs()[i]);
      }
    }
    return LabelledDiagram(d.degree(), d.k(), std::move(legs), rest);
  };
  return StuResolution{with_pair(y, x), with_pair(x, y)};
}

namespace {

std::optional<int> vertex_containing(const LabelledDiagram& d, HalfEdge h) {
  for (int i = 0; i < d.trivalent_count(); ++i) {
    const auto& t = d.trivalent()[i];
    if (std::find(t.begin(), t.end(), h) != t.end()) return i;
  }
  return std::nullopt;
}

bool has_loop(const Triple& t) {
  return edge_of(t[0]) == edge_of(t[1]) || edge_of(t[0]) == edge_of(t[2]) ||
         edge_of(t[1]) == edge_of(t[2]);
}

}  // namespace

bool is_internal_edge(const LabelledDiagram& d, int edge) {
  if (edge < 0 || edge >= d.label_count() || !(d.visible_mask() >> edge & 1u)) return false;
  return vertex_containing(d, static_cast<HalfEdge>(2 * edge)).has_value() &&
         vertex_containing(d, static_cast<HalfEdge>(2 * edge + 1)).has_value();
}

std::vector<LabelledDiagram> ihx_terms(const LabelledDiagram& d, int edge) {
  const HalfEdge h1 = static_cast<HalfEdge>(2 * edge);
  const HalfEdge h2 = static_cast<HalfEdge>(2 * edge + 1);
  const auto t1 = vertex_containing(d, h1);
  const auto t2 = vertex_containing(d, h2);
  if (!t1 || !t2) throw std::invalid_argument("ihx_terms: edge is not internal");
  std::vector<HalfEdge> outer;
  std::vector<Triple> rest;
  for (int i = 0; i < d.trivalent_count(); ++i) {
    const auto& t = d.trivalent()[i];
    if (i == *t1 || i == *t2) {
      for (HalfEdge h : t)
        if (h != h1 && h != h2) outer.push_back(h);
    } else {
      rest.push_back(t);
    }
  }
  std::sort(outer.begin(), outer.end());
  const HalfEdge a = outer[0], b = outer[1], c = outer[2], dd = outer[3];
  const Triple pairs[3][2] = {
      {{h1, a, b}, {h2, c, dd}},
      {{h1, b, c}, {h2, a, dd}},
      {{h1, c, a}, {h2, b, dd}},
  };
  std::vector<LabelledDiagram> out;
  for (const auto& p : pairs) {
    if (has_loop(p[0]) || has_loop(p[1])) continue;
    auto triples = rest;
    triples.push_back(p[0]);
    triples.push_back(p[1]);
    out.emplace_back(d.degree(), d.k(), d.legs(), std::move(triples));
  }
  return out;
}

std::vector<DiagramVector> stu_relations(int n) {
  std::vector<DiagramVector> out;
  for (const auto& cls : enumerate_classes(n)) {
    const auto& rep = cls.representative;
    for (int leg = 0; leg < rep.leg_count(); ++leg) {
      const auto r = stu_resolve(rep, leg);
      if (!r) continue;
      DiagramVector rel = diagram_vector(rep);
      add_scaled(rel, -1, diagram_vector(r->u));
      add_scaled(rel, 1, diagram_vector(r->s));
      if (!rel.empty()) out.push_back(std::move(rel));
    }
  }
  return out;
}

std::vector<DiagramVector> ihx_relations(int n) {
  std::vector<DiagramVector> out;
  for (const auto& cls : enumerate_classes(n)) {
    const auto& rep = cls.representative;
    for (int e : rep.visible_edges()) {
      if (!is_internal_edge(rep, e)) continue;
      DiagramVector rel;
      for (const auto& term : ihx_terms(rep, e)) add_scaled(rel, 1, diagram_vector(term));
      if (!rel.empty()) out.push_back(std::move(rel));
    }
  }
  return out;
}

QuotientSpace QuotientSpace::build(int n, std::optional<int> k) {
  if (n < 1 || n > 3) throw std::out_of_range("quotient space degree must be in 1..3");
  QuotientSpace q;
  q.n_ = n;
  q.k_ = k;
  const auto classes = enumerate_classes(n);
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& c : classes)
      if (!c.as_zero && c.is_chord_diagram() == (pass == 1)) q.columns_.push_back(c.key);
  for (std::size_t i = 0; i < q.columns_.size(); ++i) q.column_of_[q.columns_[i]] = static_cast<int>(i);

  q.echelon_ = RowEchelon(static_cast<int>(q.columns_.size()));
  auto add_rows = [&](const std::vector<DiagramVector>& rows) {
    for (const auto& r : rows) {
      q.echelon_.insert(q.column_vector(r));
      ++q.relation_count_;
    }
  };
  add_rows(stu_relations(n));
  add_rows(ihx_relations(n));
  if (k) {
    std::vector<DiagramVector> killed;
    for (const auto& c : classes)
      if (!c.as_zero && c.legs < *k && c.chords_or_tripods) killed.push_back({{c.key, Rational(1)}});
    add_rows(killed);
  }
  q.basis_columns_ = q.echelon_.free_columns();
  for (int c : q.basis_columns_) q.basis_.push_back(q.columns_[c]);
  return q;
}

RationalVector QuotientSpace::column_vector(const DiagramVector& v) const {
  RationalVector out(columns_.size());
  for (const auto& [key, c] : v) {
    const auto it = column_of_.find(key);
    if (it != column_of_.end()) {
      out[it->second] += c;
      continue;
    }
    if (key_degree(key) != n_)
      throw std::invalid_argument("QuotientSpace: class of degree " + std::to_string(key_degree(key)) +
                                  " in a degree " + std::to_string(n_) + " space");
    if (!make_class(key).as_zero) throw std::logic_error("QuotientSpace: unknown class");
  }
  return out;
}

RationalVector QuotientSpace::coordinates(const DiagramVector& v) const {
  const RationalVector reduced = echelon_.reduce(column_vector(v));
  RationalVector out;
  out.reserve(basis_columns_.size());
  for (int c : basis_columns_) out.push_back(reduced[c]);
  return out;
}

RationalVector QuotientSpace::coordinates(ClassKey key) const {
  return coordinates(DiagramVector{{key, Rational(1)}});
}

DiagramVector QuotientSpace::normal_form(const DiagramVector& v) const {
  const RationalVector x = coordinates(v);
  DiagramVector out;
  for (std::size_t i = 0; i < x.size(); ++i) add_term(out, basis_[i], x[i]);
  return out;
}

bool QuotientSpace::is_zero(const DiagramVector& v) const {
  return knotlattice::is_zero(coordinates(v));
}

namespace {

const QuotientSpace& cached(int n, std::optional<int> k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<QuotientSpace>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, k ? *k : -1}];
  if (!slot) slot = std::make_unique<QuotientSpace>(QuotientSpace::build(n, k));
  return *slot;
}

}  // namespace

const QuotientSpace& quotient_space(int n) { return cached(n, std::nullopt); }

const QuotientSpace& quotient_space_nk(int n, int k) {
  if (k < 0 || k > 2 * n) throw std::out_of_range("k must be in 0..2n");
  return cached(n, k);
}

DiagramVector reduce_to_chords(ClassKey key) {
  std::map<ClassKey, DiagramVector> memo;
  std::function<const DiagramVector&(ClassKey)> go = [&](ClassKey k) -> const DiagramVector& {
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    const LabelledDiagram rep = representative(k);
    DiagramVector result;
    if (canonical_form(rep).sign == 0) {
      // vanishes by AS
    } else if (rep.trivalent_count() == 0) {
      result[k] = 1;
    } else {
      std::optional<StuResolution> r;
      for (int leg = 0; leg < rep.leg_count() && !r; ++leg) r = stu_resolve(rep, leg);
      if (!r) throw std::logic_error("reduce_to_chords: no trivalent vertex next to a leg");
      for (const auto& [kk, c] : diagram_vector(r->u)) add_scaled(result, c, go(kk));
      for (const auto& [kk, c] : diagram_vector(r->s)) add_scaled(result, -c, go(kk));
    }
    return memo.emplace(k, std::move(result)).first->second;
  };
  return go(key);
}

DiagramVector reduce_to_chords(const DiagramVector& v) {
  DiagramVector out;
  for (const auto& [key, c] : v) add_scaled(out, c, reduce_to_chords(key));
  return out;
}

}  // namespace knotlattice
