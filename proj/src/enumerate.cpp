#include "knotlattice/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace knotlattice {

namespace {

void check_degree(int n) {
  if (n < 1 || n > 3) throw std::out_of_range("degree n must be in 1..3, got " + std::to_string(n));
}

// Sorted edge multisets on vertices with the given residual degrees.
void multigraphs(std::vector<int>& residual, std::vector<std::pair<int, int>>& edges,
                 const std::function<void()>& emit) {
  int i = 0;
  while (i < static_cast<int>(residual.size()) && residual[i] == 0) ++i;
  if (i == static_cast<int>(residual.size())) {
    emit();
    return;
  }
  int j_min = i + 1;
  if (!edges.empty() && edges.back().first == i) j_min = edges.back().second;
  for (int j = j_min; j < static_cast<int>(residual.size()); ++j) {
    if (residual[j] == 0) continue;
    --residual[i];
    --residual[j];
    edges.emplace_back(i, j);
    multigraphs(residual, edges, emit);
    edges.pop_back();
    ++residual[i];
    ++residual[j];
  }
}

LabelledDiagram from_edges(int n, int u, int vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<HalfEdge>> at(vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    at[edges[e].first].push_back(static_cast<HalfEdge>(2 * e));
    at[edges[e].second].push_back(static_cast<HalfEdge>(2 * e + 1));
  }
  std::vector<HalfEdge> legs;
  std::vector<Triple> trivalent;
  for (int v = 0; v < vertices; ++v) {
    if (v < u)
      legs.push_back(at[v][0]);
    else
      trivalent.push_back({at[v][0], at[v][1], at[v][2]});
  }
  return LabelledDiagram(n, 3 * n - static_cast<int>(edges.size()), std::move(legs),
                         std::move(trivalent));
}

bool every_component_has_leg(const LabelledDiagram& d) {
  const auto labels = component_labels(d);
  std::vector<char> has_leg(d.vertex_count(), 0);
  for (int v = 0; v < d.leg_count(); ++v) has_leg[labels[v]] = 1;
  for (int v = 0; v < d.vertex_count(); ++v)
    if (!has_leg[labels[v]]) return false;
  return true;
}

}  // namespace

std::vector<DiagramClass> enumerate_classes(int n) {
  check_degree(n);
  std::set<ClassKey> keys;
  const int vertices = 2 * n;
  for (int u = 1; u <= vertices; ++u) {
    std::vector<int> residual(vertices);
    for (int v = 0; v < vertices; ++v) residual[v] = v < u ? 1 : 3;
    std::vector<std::pair<int, int>> edges;
    multigraphs(residual, edges, [&] {
      const LabelledDiagram d = from_edges(n, u, vertices, edges);
      if (every_component_has_leg(d)) keys.insert(canonical_form(d).key);
    });
  }
  std::vector<DiagramClass> out;
  out.reserve(keys.size());
  for (ClassKey key : keys) out.push_back(make_class(key));
  return out;
}

void check_labelled_range(int n, int k) {
  check_degree(n);
  if (k < 0 || k > 2 * n)
    throw std::out_of_range("k must be in 0..2n = 0.." + std::to_string(2 * n) + ", got " +
                            std::to_string(k));
}

std::vector<DiagramClass> labelled_classes(int n, int k) {
  check_labelled_range(n, k);
  std::vector<DiagramClass> out;
  for (auto& c : enumerate_classes(n))
    if (c.legs >= k && c.triply_connected) out.push_back(std::move(c));
  return out;
}

void for_each_labelled(int n, int k, const std::function<void(const LabelledDiagram&)>& fn) {
  for (const auto& cls : labelled_classes(n, k)) for_each_labelling(cls, n, k, fn);
}

void for_each_labelling(const DiagramClass& cls, int n, int k,
                        const std::function<void(const LabelledDiagram&)>& fn) {
  const int labels = 3 * n - k;
  const LabelledDiagram& rep = cls.representative;
  const int edges = rep.visible_edge_count();
  const int halves = 2 * edges;
  const auto auts = automorphisms(cls.key);
  std::vector<int> image(halves);
  std::vector<char> used(labels, 0);

  auto is_orbit_minimum = [&] {
    for (std::size_t g = 1; g < auts.size(); ++g) {
      for (int h = 0; h < halves; ++h) {
        const int moved = image[auts[g][h]];
        if (moved < image[h]) return false;
        if (moved > image[h]) break;
      }
    }
    return true;
  };
  auto emit = [&] {
    std::vector<HalfEdge> legs;
    legs.reserve(rep.legs().size());
    for (HalfEdge h : rep.legs()) legs.push_back(static_cast<HalfEdge>(image[h]));
    std::vector<Triple> trivalent;
    trivalent.reserve(rep.trivalent().size());
    for (const auto& t : rep.trivalent())
      trivalent.push_back({static_cast<HalfEdge>(image[t[0]]), static_cast<HalfEdge>(image[t[1]]),
                           static_cast<HalfEdge>(image[t[2]])});
    fn(LabelledDiagram(n, k, std::move(legs), std::move(trivalent)));
  };
  std::function<void(int)> assign = [&](int j) {
    if (j == edges) {
      if (is_orbit_minimum()) emit();
      return;
    }
    for (int lbl = 0; lbl < labels; ++lbl) {
      if (used[lbl]) continue;
      used[lbl] = 1;
      for (int dir = 0; dir < 2; ++dir) {
        image[2 * j] = 2 * lbl + dir;
        image[2 * j + 1] = 2 * lbl + 1 - dir;
        assign(j + 1);
      }
      used[lbl] = 0;
    }
  };
  assign(0);
}

std::vector<LabelledDiagram> enumerate_labelled(int n, int k) {
  std::vector<LabelledDiagram> out;
  for_each_labelled(n, k, [&](const LabelledDiagram& d) { out.push_back(d); });
  return out;
}

std::uint64_t labelling_count(const DiagramClass& c, int k) {
  const int n = c.degree;
  std::uint64_t count = 1;
  for (int i = c.legs - k + 1; i <= 3 * n - k; ++i) count *= static_cast<std::uint64_t>(i);
  count <<= 3 * n - c.legs;
  return count / static_cast<std::uint64_t>(c.automorphisms);
}

}  // namespace knotlattice
