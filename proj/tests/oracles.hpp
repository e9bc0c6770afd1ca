#pragma once

// Brute-force reference implementations used only by the tests.  They share
// no code with the library beyond the LabelledDiagram accessors.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "knotlattice/diagram.hpp"

namespace oracle {

using knotlattice::LabelledDiagram;

// Orientation-free description: absent labels, legs rotated to start at the
// smallest half-edge, sorted triples of sorted half-edges.
using Shape = std::tuple<std::vector<int>, std::vector<int>, std::vector<std::array<int, 3>>>;

inline std::vector<int> rotate_to_min(std::vector<int> legs) {
  if (!legs.empty()) std::rotate(legs.begin(), std::min_element(legs.begin(), legs.end()), legs.end());
  return legs;
}

inline Shape shape_of(const LabelledDiagram& d) {
  std::vector<int> legs(d.legs().begin(), d.legs().end());
  std::vector<std::array<int, 3>> tri;
  for (const auto& t : d.trivalent()) {
    std::array<int, 3> s = {t[0], t[1], t[2]};
    std::sort(s.begin(), s.end());
    tri.push_back(s);
  }
  std::sort(tri.begin(), tri.end());
  return {d.absent_edges(), rotate_to_min(legs), tri};
}

// #E'_A >= 3 for every set A of at least two trivalent vertices.
inline bool triply_connected(int half_edges, const std::vector<std::array<int, 3>>& tri,
                             const std::vector<int>& absent) {
  const int t = static_cast<int>(tri.size());
  std::vector<int> vertex(half_edges, -1);
  for (int i = 0; i < t; ++i)
    for (int h : tri[i]) vertex[h] = i;
  std::vector<bool> is_absent(half_edges / 2, false);
  for (int e : absent) is_absent[e] = true;
  for (unsigned a = 1; a < (1u << t); ++a) {
    if (__builtin_popcount(a) < 2) continue;
    int border = 0;
    for (int e = 0; e < half_edges / 2; ++e) {
      if (is_absent[e]) continue;
      const bool in0 = vertex[2 * e] >= 0 && ((a >> vertex[2 * e]) & 1);
      const bool in1 = vertex[2 * e + 1] >= 0 && ((a >> vertex[2 * e + 1]) & 1);
      if (in0 != in1) ++border;
    }
    if (border < 3) return false;
  }
  return true;
}

// Every orientation-free member of D_{n,k}: partitions of the half-edges into
// singletons, absent edge pairs and triples on three distinct edges, with
// #U + #T = 2n, every cyclic order of U, filtered by triple connectivity.
inline std::set<Shape> brute_force_shapes(int n, int k) {
  const int labels = 3 * n - k;
  const int half = 2 * labels;
  std::set<Shape> out;
  std::vector<int> block(half, -1);  // 0 leg, 1 absent, 2 trivalent
  std::vector<int> legs;
  std::vector<int> absent;
  std::vector<std::array<int, 3>> tri;

  auto emit = [&]() {
    if (!triply_connected(half, tri, absent)) return;
    std::vector<int> rest(legs.begin() + (legs.empty() ? 0 : 1), legs.end());
    std::sort(rest.begin(), rest.end());
    do {
      std::vector<int> cyc;
      if (!legs.empty()) cyc.push_back(legs.front());
      cyc.insert(cyc.end(), rest.begin(), rest.end());
      auto sorted_tri = tri;
      std::sort(sorted_tri.begin(), sorted_tri.end());
      out.insert({absent, rotate_to_min(cyc), sorted_tri});
    } while (std::next_permutation(rest.begin(), rest.end()));
  };

  auto rec = [&](auto&& self, int h) -> void {
    const int vertices = static_cast<int>(legs.size() + tri.size());
    if (vertices > 2 * n) return;
    while (h < half && block[h] >= 0) ++h;
    if (h == half) {
      if (vertices == 2 * n) emit();
      return;
    }
    block[h] = 0;
    legs.push_back(h);
    self(self, h + 1);
    legs.pop_back();
    if (h % 2 == 0 && block[h + 1] < 0) {
      block[h] = block[h + 1] = 1;
      absent.push_back(h / 2);
      self(self, h + 1);
      absent.pop_back();
      block[h + 1] = -1;
    }
    for (int b = h + 1; b < half; ++b) {
      if (block[b] >= 0 || b / 2 == h / 2) continue;
      for (int c = b + 1; c < half; ++c) {
        if (block[c] >= 0 || c / 2 == h / 2 || c / 2 == b / 2) continue;
        block[h] = block[b] = block[c] = 2;
        tri.push_back({h, b, c});
        self(self, h + 1);
        tri.pop_back();
        block[b] = block[c] = -1;
      }
    }
    block[h] = -1;
  };
  rec(rec, 0);
  return out;
}

// Permutations of the half-edges that map edges to edges, trivalent vertices
// to trivalent vertices and the cyclic sequence of legs to a rotation of
// itself.  Orientation is ignored.  Intended for diagrams with at most six
// visible edges and no absent ones.
inline int automorphism_count(const LabelledDiagram& d) {
  const int labels = d.label_count();
  std::vector<int> perm(labels);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::array<int, 3>> tri;
  for (const auto& t : d.trivalent()) {
    std::array<int, 3> s = {t[0], t[1], t[2]};
    std::sort(s.begin(), s.end());
    tri.insert(s);
  }
  const std::vector<int> legs(d.legs().begin(), d.legs().end());
  const int u = static_cast<int>(legs.size());
  int count = 0;
  do {
    for (unsigned flips = 0; flips < (1u << labels); ++flips) {
      auto map = [&](int h) -> int { return 2 * perm[h / 2] + static_cast<int>((h & 1) ^ ((flips >> (h / 2)) & 1)); };
      bool ok = true;
      for (const auto& t : tri) {
        std::array<int, 3> s = {map(t[0]), map(t[1]), map(t[2])};
        std::sort(s.begin(), s.end());
        if (!tri.count(s)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::vector<int> image(u);
      for (int i = 0; i < u; ++i) image[i] = map(legs[i]);
      bool rotation = u == 0;
      for (int r = 0; r < u && !rotation; ++r) {
        bool same = true;
        for (int i = 0; i < u && same; ++i) same = image[(i + r) % u] == legs[i];
        rotation = same;
      }
      if (rotation) ++count;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Chord diagrams on an oriented circle as words of chord ids, compared up to
// rotation.  Independent of the library.
using Word = std::vector<int>;

inline Word canonical_word(const Word& w) {
  Word best;
  const int m = static_cast<int>(w.size());
  for (int r = 0; r < m; ++r) {
    std::map<int, int> rename;
    Word c(m);
    for (int i = 0; i < m; ++i) {
      const int x = w[(i + r) % m];
      if (!rename.count(x)) rename.emplace(x, static_cast<int>(rename.size()));
      c[i] = rename[x];
    }
    if (best.empty() || c < best) best = c;
  }
  return best;
}

inline void matchings(int points, Word& w, int next, std::set<Word>& out) {
  auto it = std::find(w.begin(), w.end(), -1);
  if (it == w.end()) {
    out.insert(canonical_word(w));
    return;
  }
  *it = next;
  for (auto jt = it + 1; jt != w.end(); ++jt) {
    if (*jt != -1) continue;
    *jt = next;
    matchings(points, w, next + 1, out);
    *jt = -1;
  }
  *it = -1;
}

// dim of chord diagrams of degree n modulo 4T: chord b has one fixed end and
// its other end x slides past both ends of chord a; the four positions just
// before and after each end of a enter with signs +, -, +, -.
inline int four_term_dimension(int n, int* diagram_count = nullptr) {
  std::set<Word> diagrams;
  Word w(2 * n, -1);
  matchings(2 * n, w, 0, diagrams);
  if (diagram_count) *diagram_count = static_cast<int>(diagrams.size());
  std::map<Word, int> index;
  for (const auto& d : diagrams) index.emplace(d, static_cast<int>(index.size()));

  std::vector<std::vector<double>> rows;
  // Base: n - 1 chords (ids 0..n-2) and the fixed end of b (id n-1) on a
  // circle of 2n - 1 points.
  std::set<Word> bases;
  for (const auto& d : diagrams) {
    // Removing one end of any chord of a degree-n diagram gives every base.
    for (int c = 0; c < n; ++c)
      for (int skip = 0; skip < 2; ++skip) {
        Word base;
        int hits = 0;
        for (int x : d) {
          if (x == c && hits++ == skip) continue;
          base.push_back(x);
        }
        // Relabel so that the lone end is n-1.
        std::map<int, int> rename;
        rename[c] = n - 1;
        int next = 0;
        for (int x : base)
          if (!rename.count(x)) rename[x] = next++;
        for (int& x : base) x = rename[x];
        bases.insert(base);
      }
  }
  for (const auto& base : bases) {
    const int m = static_cast<int>(base.size());
    for (int a = 0; a < n - 1; ++a) {
      std::vector<double> row(index.size(), 0.0);
      for (int pos = 0; pos < m; ++pos) {
        if (base[pos] != a) continue;
        for (int side = 0; side < 2; ++side) {
          Word d = base;
          d.insert(d.begin() + pos + side, n - 1);
          row[index.at(canonical_word(d))] += side == 0 ? 1 : -1;
        }
      }
      rows.push_back(row);
    }
  }
  // Rank by Gaussian elimination; entries are small integers.
  const int cols = static_cast<int>(index.size());
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (std::abs(rows[r][c]) > 1e-9) pivot = r;
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || std::abs(rows[r][c]) < 1e-9) continue;
      const double f = rows[r][c] / rows[rank][c];
      for (int j = 0; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return cols - rank;
}

}  // namespace oracle
