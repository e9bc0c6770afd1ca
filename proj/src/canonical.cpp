#include "knotlattice/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>

namespace knotlattice {

namespace {

constexpr int kLegShift = 60;
constexpr int kEdgeShift = 56;
constexpr int kCodeBits = 6;

struct Compact {
  int u = 0;
  int t = 0;
  int e = 0;
  std::array<std::uint8_t, kMaxEdges> label{};  // original edge label
  std::array<std::uint8_t, kMaxEdges> tail{};   // vertex holding 2*label
  std::array<std::uint8_t, kMaxEdges> head{};   // vertex holding 2*label+1
};

Compact compact(const LabelledDiagram& d) {
  Compact c;
  c.u = d.leg_count();
  c.t = d.trivalent_count();
  if (c.u + c.t > kMaxVertices) throw std::invalid_argument("canonical_form: too many vertices");
  const auto owner = d.vertex_of_half_edge();
  for (int lbl : d.visible_edges()) {
    const int a = owner[2 * lbl];
    const int b = owner[2 * lbl + 1];
    if (a < 0 || b < 0) throw std::invalid_argument("canonical_form: visible edge with unused half");
    if (a == b) throw std::invalid_argument("canonical_form: loop edge");
    if (c.e == kMaxEdges) throw std::invalid_argument("canonical_form: too many edges");
    c.label[c.e] = static_cast<std::uint8_t>(lbl);
    c.tail[c.e] = static_cast<std::uint8_t>(a);
    c.head[c.e] = static_cast<std::uint8_t>(b);
    ++c.e;
  }
  return c;
}

struct Numbering {
  int rotation = 0;
  std::array<std::uint8_t, kMaxVertices> perm{};  // trivalent index -> new trivalent index
};

inline int renumber(const Compact& c, const Numbering& nb, int v) {
  if (v < c.u) return (v - nb.rotation + c.u) % c.u;
  return c.u + nb.perm[v - c.u];
}

inline std::uint8_t edge_code(const Compact& c, const Numbering& nb, int i) {
  int a = renumber(c, nb, c.tail[i]);
  int b = renumber(c, nb, c.head[i]);
  if (a > b) std::swap(a, b);
  return static_cast<std::uint8_t>(a * kMaxVertices + b);
}

ClassKey encode(const Compact& c, const Numbering& nb) {
  std::array<std::uint8_t, kMaxEdges> codes{};
  for (int i = 0; i < c.e; ++i) codes[i] = edge_code(c, nb, i);
  std::sort(codes.begin(), codes.begin() + c.e);
  ClassKey key = static_cast<ClassKey>(c.u) << kLegShift | static_cast<ClassKey>(c.e) << kEdgeShift;
  for (int i = 0; i < c.e; ++i)
    key |= static_cast<ClassKey>(codes[i]) << (kEdgeShift - kCodeBits * (i + 1));
  return key;
}

// All numberings achieving the minimal encoding.
std::vector<Numbering> minimal_numberings(const Compact& c, ClassKey& best) {
  std::vector<Numbering> out;
  best = ~ClassKey{0};
  Numbering nb;
  const int rotations = std::max(c.u, 1);
  for (int r = 0; r < rotations; ++r) {
    nb.rotation = r;
    std::iota(nb.perm.begin(), nb.perm.begin() + c.t, 0);
    do {
      const ClassKey key = encode(c, nb);
      if (key < best) {
        best = key;
        out.clear();
      }
      if (key == best) out.push_back(nb);
    } while (std::next_permutation(nb.perm.begin(), nb.perm.begin() + c.t));
  }
  return out;
}

// Half-edge map from the input to the representative for one numbering.
// Parallel copies are matched in input order.
std::vector<int> half_edge_map(const Compact& c, const Numbering& nb, int half_edge_count) {
  std::array<int, kMaxEdges> order{};
  std::array<std::uint8_t, kMaxEdges> codes{};
  for (int i = 0; i < c.e; ++i) codes[i] = edge_code(c, nb, i);
  std::iota(order.begin(), order.begin() + c.e, 0);
  std::stable_sort(order.begin(), order.begin() + c.e,
                   [&](int x, int y) { return codes[x] < codes[y]; });
  std::vector<int> phi(half_edge_count, -1);
  for (int j = 0; j < c.e; ++j) {
    const int i = order[j];
    const int a = renumber(c, nb, c.tail[i]);
    const int b = renumber(c, nb, c.head[i]);
    const int lbl = c.label[i];
    phi[2 * lbl] = a < b ? 2 * j : 2 * j + 1;
    phi[2 * lbl + 1] = a < b ? 2 * j + 1 : 2 * j;
  }
  return phi;
}

int parity(int a, int b, int c) {
  const int inversions = (a > b) + (a > c) + (b > c);
  return inversions % 2 == 0 ? 1 : -1;
}

int map_sign(const LabelledDiagram& d, const std::vector<int>& phi) {
  int s = 1;
  for (const auto& t : d.trivalent()) s *= parity(phi[t[0]], phi[t[1]], phi[t[2]]);
  return s;
}

// Product of multiplicity factorials of parallel edge groups in the key.
int parallel_factor(ClassKey key) {
  const int e = key_edge_count(key);
  int factor = 1;
  int run = 1;
  for (int i = 1; i <= e; ++i) {
    const auto code_at = [&](int j) { return (key >> (kEdgeShift - kCodeBits * (j + 1))) & 63u; };
    if (i < e && code_at(i) == code_at(i - 1)) {
      ++run;
      factor *= run;
    } else {
      run = 1;
    }
  }
  return factor;
}

}  // namespace

int key_leg_count(ClassKey key) { return static_cast<int>(key >> kLegShift); }
int key_edge_count(ClassKey key) { return static_cast<int>(key >> kEdgeShift & 15u); }
int key_degree(ClassKey key) {
  if (key == kEmptyKey) return 0;
  // u + 3t = 2E and u + t = 2n
  const int u = key_leg_count(key);
  const int t = (2 * key_edge_count(key) - u) / 3;
  return (u + t) / 2;
}

CanonicalForm canonical_form(const LabelledDiagram& d) {
  CanonicalForm out;
  if (d.vertex_count() == 0) return out;
  const Compact c = compact(d);
  ClassKey best = 0;
  const auto numberings = minimal_numberings(c, best);
  out.key = best;
  out.automorphisms = static_cast<int>(numberings.size()) * parallel_factor(best);
  out.sign = 0;
  for (std::size_t i = 0; i < numberings.size(); ++i) {
    const int s = map_sign(d, half_edge_map(c, numberings[i], d.half_edge_count()));
    if (i == 0) {
      out.sign = s;
    } else if (s != out.sign) {
      out.sign = 0;
      break;
    }
  }
  return out;
}

LabelledDiagram representative(ClassKey key) {
  if (key == kEmptyKey) return LabelledDiagram(0, 0, {}, {});
  const int u = key_leg_count(key);
  const int e = key_edge_count(key);
  std::vector<std::pair<int, int>> pairs;
  int vertices = 0;
  for (int i = 0; i < e; ++i) {
    const int code = static_cast<int>(key >> (kEdgeShift - kCodeBits * (i + 1)) & 63u);
    pairs.emplace_back(code / kMaxVertices, code % kMaxVertices);
    vertices = std::max(vertices, code % kMaxVertices + 1);
  }
  std::vector<std::vector<HalfEdge>> at(vertices);
  for (int j = 0; j < e; ++j) {
    at[pairs[j].first].push_back(static_cast<HalfEdge>(2 * j));
    at[pairs[j].second].push_back(static_cast<HalfEdge>(2 * j + 1));
  }
  std::vector<HalfEdge> legs;
  std::vector<Triple> trivalent;
  for (int v = 0; v < vertices; ++v) {
    if (v < u) {
      if (at[v].size() != 1) throw std::invalid_argument("representative: malformed key");
      legs.push_back(at[v][0]);
    } else {
      if (at[v].size() != 3) throw std::invalid_argument("representative: malformed key");
      std::sort(at[v].begin(), at[v].end());
      trivalent.push_back({at[v][0], at[v][1], at[v][2]});
    }
  }
  const int n = vertices / 2;
  return LabelledDiagram(n, 3 * n - e, std::move(legs), std::move(trivalent));
}

std::vector<std::vector<HalfEdge>> automorphisms(ClassKey key) {
  const LabelledDiagram rep = representative(key);
  std::vector<std::vector<HalfEdge>> out;
  if (key == kEmptyKey) {
    out.emplace_back();
    return out;
  }
  const Compact c = compact(rep);
  ClassKey best = 0;
  const auto numberings = minimal_numberings(c, best);
  // Parallel groups: runs of equal codes, as ranges of representative edges.
  std::vector<std::pair<int, int>> groups;
  for (int j = 0; j < c.e;) {
    int end = j + 1;
    while (end < c.e && c.tail[end] == c.tail[j] && c.head[end] == c.head[j]) ++end;
    if (end - j > 1) groups.emplace_back(j, end);
    j = end;
  }
  for (const auto& nb : numberings) {
    const auto base = half_edge_map(c, nb, rep.half_edge_count());
    // Permute within each parallel group of source edges; the group's
    // targets are the same set of representative edges.
    std::vector<std::vector<int>> perms(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      perms[g].resize(groups[g].second - groups[g].first);
      std::iota(perms[g].begin(), perms[g].end(), 0);
    }
    while (true) {
      std::vector<HalfEdge> map(rep.half_edge_count());
      for (int h = 0; h < rep.half_edge_count(); ++h) map[h] = static_cast<HalfEdge>(base[h]);
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const int first = groups[g].first;
        for (int i = 0; i < static_cast<int>(perms[g].size()); ++i) {
          const int src = first + i;
          const int dst = first + perms[g][i];
          map[2 * src] = static_cast<HalfEdge>(base[2 * dst]);
          map[2 * src + 1] = static_cast<HalfEdge>(base[2 * dst + 1]);
        }
      }
      out.push_back(std::move(map));
      std::size_t g = 0;
      while (g < groups.size() && !std::next_permutation(perms[g].begin(), perms[g].end())) ++g;
      if (g == groups.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // The identity sorts first among permutations.
  return out;
}

DiagramClass make_class(ClassKey key) {
  DiagramClass cls;
  cls.key = key;
  cls.representative = representative(key);
  const auto& rep = cls.representative;
  cls.degree = rep.degree();
  cls.legs = rep.leg_count();
  if (key == kEmptyKey) return cls;
  const CanonicalForm f = canonical_form(rep);
  if (f.key != key) throw std::logic_error("make_class: key is not canonical");
  cls.automorphisms = f.automorphisms;
  cls.as_zero = f.sign == 0;
  cls.triply_connected = is_triply_connected(rep);
  cls.four_leg = has_four_leg_property(rep);
  cls.chords_or_tripods = components_are_chords_or_tripods(rep);
  cls.components = component_count(rep);
  return cls;
}

}  // namespace knotlattice
