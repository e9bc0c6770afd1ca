#include "knotlattice/gluing.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "knotlattice/enumerate.hpp"

namespace knotlattice {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::kRstu:
      return "rstu";
    case Relation::kRihx:
      return "rihx";
    case Relation::kRihxPrime:
      return "rihx-prime";
  }
  return "?";
}

std::uint64_t GluingReport::violation_count() const {
  std::uint64_t total = 0;
  for (const auto& c : conditions) total += c.violations;
  return total;
}

namespace {

constexpr int kSlots = 8;

// Fixed-size copy of a diagram for the inner loops.
struct Raw {
  int u = 0;
  int t = 0;
  std::array<HalfEdge, kSlots> legs{};
  std::array<Triple, kSlots> tri{};
};

Raw raw_of(const LabelledDiagram& d) {
  Raw r;
  r.u = d.leg_count();
  r.t = d.trivalent_count();
  if (r.u > kSlots || r.t > kSlots) throw std::out_of_range("diagram too large for the gluing checker");
  std::copy(d.legs().begin(), d.legs().end(), r.legs.begin());
  std::copy(d.trivalent().begin(), d.trivalent().end(), r.tri.begin());
  return r;
}

LabelledDiagram diagram_of(const Raw& r, int n, int k) {
  return LabelledDiagram(n, k, std::vector<HalfEdge>(r.legs.begin(), r.legs.begin() + r.u),
                         std::vector<Triple>(r.tri.begin(), r.tri.begin() + r.t));
}

std::uint32_t used_labels(const Raw& r) {
  std::uint32_t used = 0;
  for (int i = 0; i < r.u; ++i) used |= 1u << edge_of(r.legs[i]);
  for (int i = 0; i < r.t; ++i)
    for (HalfEdge h : r.tri[i]) used |= 1u << edge_of(h);
  return used;
}

// Sorts each vertex into increasing order, sorts the vertices and rotates the
// legs to start at the smallest.  Returns the parity of the vertex sorts.
int normalize(Raw& r) {
  int sign = 1;
  for (int i = 0; i < r.t; ++i) {
    auto& x = r.tri[i];
    if (x[0] > x[1]) std::swap(x[0], x[1]), sign = -sign;
    if (x[1] > x[2]) std::swap(x[1], x[2]), sign = -sign;
    if (x[0] > x[1]) std::swap(x[0], x[1]), sign = -sign;
  }
  std::sort(r.tri.begin(), r.tri.begin() + r.t);
  if (r.u > 0)
    std::rotate(r.legs.begin(), std::min_element(r.legs.begin(), r.legs.begin() + r.u),
                r.legs.begin() + r.u);
  return sign;
}

using Code = unsigned __int128;

struct CodeHash {
  std::size_t operator()(Code c) const {
    const auto lo = static_cast<std::uint64_t>(c);
    const auto hi = static_cast<std::uint64_t>(c >> 64);
    return std::hash<std::uint64_t>()(lo ^ (hi * 0x9e3779b97f4a7c15ull));
  }
};

// Of a normalized diagram.  The leading leg count makes codes of different
// shapes distinct.
Code encode(const Raw& r) {
  Code c = static_cast<Code>(r.u);
  for (int i = 0; i < r.u; ++i) c = c << 5 | r.legs[i];
  for (int i = 0; i < r.t; ++i)
    for (HalfEdge h : r.tri[i]) c = c << 5 | h;
  return c;
}

class TcCache {
 public:
  explicit TcCache(int n) : n_(n) {}
  bool operator()(Raw r, int k) {
    normalize(r);
    const Code c = encode(r);
    if (auto it = cache_.find(c); it != cache_.end()) return it->second;
    const bool tc = is_triply_connected(diagram_of(r, n_, k));
    cache_.emplace(c, tc);
    return tc;
  }

 private:
  int n_;
  std::unordered_map<Code, bool, CodeHash> cache_;
};

struct Weighted {
  long coefficient;
  int id;
};

// Memoized alpha on normalized diagrams.  Distinct values are interned and
// also kept as integers over a common denominator, so relation sums are
// exact integer sums.
class Evaluator {
 public:
  Evaluator(const AlphaMap& alpha, int n, int k) : alpha_(alpha), n_(n), k_(k), tc_(n) {
    intern(RationalVector(alpha.dimension()));
  }

  // alpha(r) = sign * value(id); id 0 is the zero vector.
  Weighted eval(Raw r, long coefficient) {
    const int sign = normalize(r);
    const Code c = encode(r);
    int id;
    if (auto it = cache_.find(c); it != cache_.end()) {
      id = it->second;
    } else {
      id = intern(alpha_.value(diagram_of(r, n_, k_)));
      cache_.emplace(c, id);
    }
    return {id == 0 ? 0 : coefficient * sign, id};
  }

  bool triply_connected(const Raw& r, int k) { return tc_(r, k); }

  bool vanishes(const std::vector<Weighted>& terms) const {
    if (exact_only_) return is_zero(residual(terms));
    std::array<__int128, 16> acc{};
    for (const auto& w : terms) {
      if (w.coefficient == 0) continue;
      const auto& s = scaled_[w.id];
      for (std::size_t i = 0; i < s.size(); ++i) acc[i] += static_cast<__int128>(w.coefficient) * s[i];
    }
    for (std::size_t i = 0; i < dimension(); ++i)
      if (acc[i] != 0) return false;
    return true;
  }

  RationalVector residual(const std::vector<Weighted>& terms) const {
    RationalVector r(dimension());
    for (const auto& w : terms)
      if (w.coefficient != 0) axpy(r, Rational(w.coefficient), values_[w.id]);
    return r;
  }

 private:
  std::size_t dimension() const { return values_.front().size(); }

  int intern(RationalVector v) {
    if (auto it = ids_.find(v); it != ids_.end()) return it->second;
    const int id = static_cast<int>(values_.size());
    ids_.emplace(v, id);
    values_.push_back(std::move(v));
    Integer lcm = denominator_;
    for (const auto& x : values_.back()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    const bool rescale = lcm != denominator_;
    denominator_ = lcm;
    if (dimension() > 16) exact_only_ = true;
    if (rescale) scaled_.clear();
    for (std::size_t j = scaled_.size(); j < values_.size(); ++j) {
      std::vector<long> s;
      for (const auto& x : values_[j]) {
        const Rational y = x * Rational(denominator_);
        // The integer path needs headroom for sums of many terms.
        if (!mpz_fits_slong_p(y.get_num_mpz_t()) || abs(y.get_num()) > Integer(1) << 40) exact_only_ = true;
        s.push_back(exact_only_ ? 0 : y.get_num().get_si());
      }
      scaled_.push_back(std::move(s));
    }
    return id;
  }

  const AlphaMap& alpha_;
  int n_;
  int k_;
  TcCache tc_;
  std::unordered_map<Code, int, CodeHash> cache_;
  std::map<RationalVector, int> ids_;
  std::vector<RationalVector> values_;
  std::vector<std::vector<long>> scaled_;
  Integer denominator_ = 1;
  bool exact_only_ = false;
};

constexpr int kMaxTerms = 24;

struct RawInstance {
  Relation kind = Relation::kRstu;
  int size = 0;
  std::array<std::pair<int, Raw>, kMaxTerms> terms;
  bool empty_rhs = false;
  // RIHX only: the diagram outside the internal edge, its orientation sign,
  // and the outer half-edges.
  Code group = 0;
  int group_sign = 1;

  void add(int coefficient, const Raw& r) {
    if (size == kMaxTerms) throw std::logic_error("relation instance has too many terms");
    terms[size++] = {coefficient, r};
  }
};

template <class Tc, class Fn>
void for_each_rstu(const Raw& g, int n, int k, Tc&& tc, InstanceCounts& counts, Fn&& fn) {
  const int labels = 3 * n - k;
  const std::uint32_t used = used_labels(g);
  std::vector<int> absent;
  for (int l = 0; l < labels; ++l)
    if (!(used >> l & 1u)) absent.push_back(l);
  RawInstance inst;
  inst.kind = Relation::kRstu;
  for (int i = 0; i < g.u; ++i) {
    const int j = (i + 1) % g.u;
    if (i == j) continue;
    const HalfEdge p = g.legs[i];
    const HalfEdge q = g.legs[j];
    if (p > q || edge_of(p) == edge_of(q)) continue;
    auto t_diagram = [&](int e, int dir) {
      Raw t = g;
      t.legs[i] = static_cast<HalfEdge>(2 * e + dir);
      std::copy(t.legs.begin() + j + 1, t.legs.begin() + t.u, t.legs.begin() + j);
      --t.u;
      t.tri[t.t++] = {static_cast<HalfEdge>(2 * e + 1 - dir), q, p};
      return t;
    };
    // Without absent labels the shape is tested with one extra label.
    const bool connected =
        absent.empty() ? tc(t_diagram(labels, 0), k - 1) : tc(t_diagram(absent.front(), 0), k);
    if (!connected) {
      ++counts.dropped;
      continue;
    }
    Raw s = g;
    std::swap(s.legs[i], s.legs[j]);
    inst.size = 0;
    inst.add(1, g);
    inst.add(-1, s);
    for (int e : absent)
      for (int dir = 0; dir < 2; ++dir) inst.add(-1, t_diagram(e, dir));
    inst.empty_rhs = absent.empty();
    ++counts.kept;
    if (inst.empty_rhs) ++counts.empty_rhs;
    fn(inst);
  }
}

template <class Tc, class Fn>
void for_each_rihx(const Raw& g, Tc&& tc, int k, InstanceCounts& counts, Fn&& fn) {
  std::array<int, 2 * kMaxLabels> at;
  at.fill(-1);
  for (int x = 0; x < g.t; ++x)
    for (HalfEdge h : g.tri[x]) at[h] = x;
  RawInstance inst;
  inst.kind = Relation::kRihx;
  for (int x = 0; x < g.t; ++x) {
    for (int jx = 0; jx < 3; ++jx) {
      const HalfEdge h = g.tri[x][jx];
      if (h & 1) continue;
      const int y = at[h + 1];
      if (y < 0) continue;
      std::array<HalfEdge, 2> ab{};
      std::array<HalfEdge, 2> cd{};
      for (int j = 0, m = 0; j < 3; ++j)
        if (g.tri[x][j] != h) ab[m++] = g.tri[x][j];
      for (int j = 0, m = 0; j < 3; ++j)
        if (g.tri[y][j] != h + 1) cd[m++] = g.tri[y][j];
      std::sort(ab.begin(), ab.end());
      std::sort(cd.begin(), cd.end());
      if (ab[1] > cd[0]) continue;
      const HalfEdge a = ab[0], b = ab[1], c = cd[0], d = cd[1];
      const int e = h / 2;

      Raw rest = g;
      rest.t = 0;
      for (int i = 0; i < g.t; ++i)
        if (i != x && i != y) rest.tri[rest.t++] = g.tri[i];
      const std::array<std::array<HalfEdge, 4>, 3> pairings{{{a, b, c, d}, {b, c, a, d}, {c, a, b, d}}};
      auto term = [&](int p, int dir) {
        Raw r = rest;
        const auto& q = pairings[p];
        r.tri[r.t++] = {static_cast<HalfEdge>(2 * e + dir), q[0], q[1]};
        r.tri[r.t++] = {static_cast<HalfEdge>(2 * e + 1 - dir), q[2], q[3]};
        return r;
      };
      std::array<bool, 3> loop{};
      bool connected = true;
      for (int p = 0; p < 3; ++p) {
        const auto& q = pairings[p];
        loop[p] = partner(q[0]) == q[1] || partner(q[2]) == q[3];
        if (!loop[p] && !tc(term(p, 0), k)) connected = false;
      }
      if (!connected) {
        ++counts.dropped;
        continue;
      }
      inst.size = 0;
      for (int p = 0; p < 3; ++p)
        if (!loop[p])
          for (int dir = 0; dir < 2; ++dir) inst.add(1, term(p, dir));
      Raw key = rest;
      inst.group_sign = normalize(key);
      inst.group = encode(key) << 20 | static_cast<Code>(a) << 15 | static_cast<Code>(b) << 10 |
                   static_cast<Code>(c) << 5 | d;
      ++counts.kept;
      fn(inst);
    }
  }
}

RelationInstance materialize(const RawInstance& inst, int n, int k) {
  RelationInstance out;
  out.kind = inst.kind;
  out.empty_rhs = inst.empty_rhs;
  for (int i = 0; i < inst.size; ++i)
    out.terms.push_back({inst.terms[i].first, diagram_of(inst.terms[i].second, n, k)});
  return out;
}

// Calls fn(raw) for each labelled diagram of D_{n,k}.
template <class Fn>
void for_each_raw(int n, int k, Fn&& fn) {
  for_each_labelled(n, k, [&](const LabelledDiagram& d) { fn(d, raw_of(d)); });
}

}  // namespace

std::vector<RelationInstance> rstu_instances(int n, int k, InstanceCounts* counts) {
  check_labelled_range(n, k);
  TcCache tc(n);
  InstanceCounts local;
  std::vector<RelationInstance> out;
  for_each_raw(n, k, [&](const LabelledDiagram&, const Raw& g) {
    for_each_rstu(g, n, k, tc, local, [&](const RawInstance& inst) { out.push_back(materialize(inst, n, k)); });
  });
  if (counts) *counts = local;
  return out;
}

std::vector<RelationInstance> rihx_instances(int n, int k, InstanceCounts* counts) {
  check_labelled_range(n, k);
  TcCache tc(n);
  InstanceCounts local;
  std::vector<RelationInstance> out;
  for_each_raw(n, k, [&](const LabelledDiagram&, const Raw& g) {
    for_each_rihx(g, tc, k, local, [&](const RawInstance& inst) { out.push_back(materialize(inst, n, k)); });
  });
  if (counts) *counts = local;
  return out;
}

std::vector<RelationInstance> rihx_prime_instances(int n, int k) {
  check_labelled_range(n, k);
  TcCache tc(n);
  InstanceCounts local;
  // Terms with the same diagram are merged after orienting every vertex in
  // increasing order.
  std::map<Code, std::map<LabelledDiagram, int>> groups;
  for_each_raw(n, k, [&](const LabelledDiagram&, const Raw& g) {
    for_each_rihx(g, tc, k, local, [&](const RawInstance& inst) {
      auto& group = groups[inst.group];
      for (int i = 0; i < inst.size; ++i) {
        Raw r = inst.terms[i].second;
        const int sign = normalize(r);
        group[diagram_of(r, n, k)] += inst.group_sign * sign * inst.terms[i].first;
      }
    });
  });
  std::vector<RelationInstance> out;
  for (const auto& [code, group] : groups) {
    RelationInstance inst;
    inst.kind = Relation::kRihxPrime;
    for (const auto& [d, c] : group)
      if (c != 0) inst.terms.push_back({c, d});
    out.push_back(std::move(inst));
  }
  return out;
}

// --- Faces with more than two vertices --------------------------------------

namespace {

struct FaceEdges {
  std::vector<int> border;  // labels with exactly one end in A
  std::vector<int> inside;  // for each border label, its end in A
};

FaceEdges face_edges(const LabelledDiagram& d, const std::vector<int>& owner, unsigned subset) {
  FaceEdges f;
  for (int e : d.visible_edges()) {
    const int a = owner[2 * e];
    const int b = owner[2 * e + 1];
    const bool ia = subset >> a & 1u;
    const bool ib = subset >> b & 1u;
    if (ia != ib) {
      f.border.push_back(e);
      f.inside.push_back(ia ? a : b);
    }
  }
  return f;
}

}  // namespace

std::vector<unsigned> admissible_subsets(const LabelledDiagram& d) {
  const int nv = d.vertex_count();
  const int u = d.leg_count();
  const auto owner = d.vertex_of_half_edge();
  std::vector<unsigned> adjacent(nv, 0);
  for (int e : d.visible_edges()) {
    const int a = owner[2 * e];
    const int b = owner[2 * e + 1];
    adjacent[a] |= 1u << b;
    adjacent[b] |= 1u << a;
  }
  const unsigned leg_mask = (1u << u) - 1;
  std::vector<unsigned> out;
  for (unsigned mask = 1; mask < (1u << nv); ++mask) {
    if (std::popcount(mask) <= 2) continue;
    unsigned reach = mask & -mask;
    for (;;) {
      unsigned next = reach;
      for (int v = 0; v < nv; ++v)
        if (reach >> v & 1u) next |= adjacent[v] & mask;
      if (next == reach) break;
      reach = next;
    }
    if (reach != mask) continue;
    const FaceEdges f = face_edges(d, owner, mask);
    const int border = static_cast<int>(f.border.size());
    const unsigned legs_in = mask & leg_mask;
    bool typed = false;
    if (legs_in == 0)
      typed = border == 3 || border == 4;
    else if (legs_in != leg_mask)
      typed = border == 1 || border == 2;
    if (!typed) continue;
    std::vector<int> hits(nv, 0);
    bool ok = true;
    for (int v : f.inside)
      if (v < u || ++hits[v] > 1) ok = false;
    if (ok) out.push_back(mask);
  }
  return out;
}

LabelledDiagram face_partner(const LabelledDiagram& d, unsigned subset, unsigned* partner_subset) {
  const auto owner = d.vertex_of_half_edge();
  const FaceEdges f = face_edges(d, owner, subset);
  if (f.border.empty()) throw std::invalid_argument("face_partner: no edge leaves the subset");
  const auto lowest = std::min_element(f.border.begin(), f.border.end()) - f.border.begin();
  const int e = f.border[lowest];
  const int x = f.inside[lowest];
  const int u = d.leg_count();
  if (x < u) throw std::invalid_argument("face_partner: the edge leaves the subset at a leg");
  std::vector<int> others;
  for (HalfEdge h : d.trivalent()[x - u])
    if (edge_of(h) != e) others.push_back(edge_of(h));
  std::sort(others.begin(), others.end());
  const int e1 = others[0];
  const int e2 = others[1];
  auto pi = [&](HalfEdge h) -> HalfEdge {
    const int s = h & 1;
    if (edge_of(h) == e1) return static_cast<HalfEdge>(2 * e2 + 1 - s);
    if (edge_of(h) == e2) return static_cast<HalfEdge>(2 * e1 + 1 - s);
    return h;
  };
  std::vector<HalfEdge> legs;
  for (HalfEdge h : d.legs()) legs.push_back(pi(h));
  std::vector<Triple> triples;
  for (const auto& t : d.trivalent()) triples.push_back({pi(t[0]), pi(t[1]), pi(t[2])});
  LabelledDiagram out(d.degree(), d.k(), std::move(legs), std::move(triples));
  if (partner_subset) {
    const auto moved = out.vertex_of_half_edge();
    *partner_subset = 0;
    for (int v = 0; v < d.vertex_count(); ++v) {
      if (!(subset >> v & 1u)) continue;
      const HalfEdge h = v < u ? d.legs()[v] : d.trivalent()[v - u][0];
      *partner_subset |= 1u << moved[pi(h)];
    }
  }
  return out;
}

PairingReport check_pairing_structure(int n, int k) {
  check_labelled_range(n, k);
  PairingReport r;
  r.n = n;
  r.k = k;
  for_each_labelled(n, k, [&](const LabelledDiagram& d) {
    for (unsigned a : admissible_subsets(d)) {
      ++r.faces;
      unsigned a2 = 0;
      const LabelledDiagram p = face_partner(d, a, &a2);
      if (p == d) ++r.self_paired;
      const auto back = admissible_subsets(p);
      if (std::find(back.begin(), back.end(), a2) == back.end() || face_partner(p, a2) != d)
        ++r.not_involutive;
    }
  });
  return r;
}

// --- Checker ----------------------------------------------------------------

namespace {

enum ConditionIndex { kRstuIndex, kRihxIndex, kRihxPrimeIndex, kPairingIndex, kInsertionIndex, kConditionCount };
const std::array<const char*, kConditionCount> kConditionNames{"rstu", "rihx", "rihx-prime", "pairing",
                                                               "insertion"};

struct ClassResult {
  std::array<ConditionReport, kConditionCount> conditions;
  std::array<std::vector<GluingViolation>, kConditionCount> violations;
};

// Diagrams obtained by moving the leg block of one component, when it is a
// contiguous interval of the cycle, into another gap.
std::vector<Raw> reinsertions(const LabelledDiagram& d, const Raw& g) {
  std::vector<Raw> out;
  const int u = g.u;
  const auto labels = component_labels(d);
  if (component_count(d) < 2) return out;
  std::vector<int> seen;
  for (int i = 0; i < u; ++i) {
    const int c = labels[i];
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    int m = 0;
    for (int j = 0; j < u; ++j) m += labels[j] == c;
    if (m == u) continue;
    int start = -1;
    for (int j = 0; j < u; ++j)
      if (labels[j] == c && labels[(j + u - 1) % u] != c) start = j;
    bool contiguous = true;
    for (int j = 0; j < m; ++j)
      if (labels[(start + j) % u] != c) contiguous = false;
    if (!contiguous) continue;
    std::vector<HalfEdge> block, rest;
    for (int j = 0; j < m; ++j) block.push_back(g.legs[(start + j) % u]);
    for (int j = m; j < u; ++j) rest.push_back(g.legs[(start + j) % u]);
    const int r = static_cast<int>(rest.size());
    // The block originally sits after rest[r-1].
    for (int gap = 0; gap + 1 < r; ++gap) {
      Raw moved = g;
      int pos = 0;
      for (int j = 0; j <= gap; ++j) moved.legs[pos++] = rest[j];
      for (HalfEdge h : block) moved.legs[pos++] = h;
      for (int j = gap + 1; j < r; ++j) moved.legs[pos++] = rest[j];
      out.push_back(moved);
    }
  }
  return out;
}

class ClassChecker {
 public:
  ClassChecker(const AlphaMap& alpha, int n, int k, const GluingOptions& options)
      : alpha_(alpha), n_(n), k_(k), options_(options), ev_(alpha, n, k) {}

  ClassResult run(const DiagramClass& cls) {
    ClassResult r;
    for (int i = 0; i < kConditionCount; ++i) r.conditions[i].name = kConditionNames[i];
    r.conditions[kPairingIndex].automatic = alpha_.class_constant();
    std::map<Code, std::vector<Weighted>> groups;
    std::vector<Weighted> terms;
    auto tc = [&](const Raw& x, int k) { return ev_.triply_connected(x, k); };
    auto evaluate = [&](const RawInstance& inst) {
      terms.clear();
      for (int i = 0; i < inst.size; ++i) terms.push_back(ev_.eval(inst.terms[i].second, inst.terms[i].first));
    };

    for_each_labelling(cls, n_, k_, [&](const LabelledDiagram& d) {
      const Raw g = raw_of(d);
      InstanceCounts rstu;
      for_each_rstu(g, n_, k_, tc, rstu, [&](const RawInstance& inst) {
        evaluate(inst);
        if (!ev_.vanishes(terms)) record(r, kRstuIndex, materialize(inst, n_, k_).terms, ev_.residual(terms));
      });
      add_counts(r.conditions[kRstuIndex], rstu);

      InstanceCounts rihx;
      for_each_rihx(g, tc, k_, rihx, [&](const RawInstance& inst) {
        evaluate(inst);
        if (!ev_.vanishes(terms)) record(r, kRihxIndex, materialize(inst, n_, k_).terms, ev_.residual(terms));
        if (options_.rihx_prime) {
          auto& group = groups[inst.group];
          for (const auto& w : terms) group.push_back({w.coefficient * inst.group_sign, w.id});
        }
      });
      add_counts(r.conditions[kRihxIndex], rihx);

      if (!alpha_.class_constant()) {
        for (unsigned a : admissible_subsets(d)) {
          const Weighted pair[2] = {ev_.eval(raw_of(face_partner(d, a)), 1), ev_.eval(g, -1)};
          const std::vector<Weighted> t(pair, pair + 2);
          ++r.conditions[kPairingIndex].checked;
          if (!ev_.vanishes(t)) record(r, kPairingIndex, {{1, face_partner(d, a)}, {-1, d}}, ev_.residual(t));
        }
      }

      for (const Raw& moved : reinsertions(d, g)) {
        const std::vector<Weighted> t{ev_.eval(moved, 1), ev_.eval(g, -1)};
        ++r.conditions[kInsertionIndex].checked;
        if (!ev_.vanishes(t)) record(r, kInsertionIndex, {{1, diagram_of(moved, n_, k_)}, {-1, d}}, ev_.residual(t));
      }
    });

    for (const auto& [code, group] : groups) {
      ++r.conditions[kRihxPrimeIndex].checked;
      if (!ev_.vanishes(group)) {
        // Reported by the structure outside the internal edge only.
        record(r, kRihxPrimeIndex, {}, ev_.residual(group));
      }
    }
    return r;
  }

 private:
  static void add_counts(ConditionReport& c, const InstanceCounts& counts) {
    c.checked += counts.kept;
    c.dropped += counts.dropped;
    c.empty_rhs += counts.empty_rhs;
  }

  void record(ClassResult& r, int index, std::vector<RelationTerm> terms, RationalVector residual) {
    ++r.conditions[index].violations;
    if (r.violations[index].size() < options_.max_reported)
      r.violations[index].push_back({kConditionNames[index], std::move(terms), std::move(residual)});
  }

  const AlphaMap& alpha_;
  int n_;
  int k_;
  const GluingOptions& options_;
  Evaluator ev_;
};

}  // namespace

GluingReport check_gluing(const AlphaMap& alpha, int n, int k, const GluingOptions& options) {
  check_labelled_range(n, k);
  if (alpha.degree() != n || alpha.k() != k)
    throw std::invalid_argument("check_gluing: alpha is defined on D_{" + std::to_string(alpha.degree()) + "," +
                                std::to_string(alpha.k()) + "}");
  const auto classes = labelled_classes(n, k);
  std::vector<ClassResult> results(classes.size());
  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(classes.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      ClassChecker checker(alpha, n, k, options);
      for (std::size_t i; (i = next++) < classes.size();) results[i] = checker.run(classes[i]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  GluingReport report;
  report.alpha = alpha.name();
  report.n = n;
  report.k = k;
  report.conditions.resize(kConditionCount);
  for (int i = 0; i < kConditionCount; ++i) {
    report.conditions[i].name = kConditionNames[i];
    report.conditions[i].automatic = i == kPairingIndex && alpha.class_constant();
  }
  std::array<std::vector<GluingViolation>, kConditionCount> kept;
  for (const auto& r : results) {
    for (int i = 0; i < kConditionCount; ++i) {
      auto& c = report.conditions[i];
      c.checked += r.conditions[i].checked;
      c.dropped += r.conditions[i].dropped;
      c.empty_rhs += r.conditions[i].empty_rhs;
      c.violations += r.conditions[i].violations;
      for (const auto& v : r.violations[i])
        if (kept[i].size() < options.max_reported) kept[i].push_back(v);
    }
  }
  for (auto& v : kept)
    for (auto& x : v) report.violations.push_back(std::move(x));
  return report;
}

}  // namespace knotlattice
