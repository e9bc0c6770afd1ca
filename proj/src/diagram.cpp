#include "knotlattice/diagram.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace knotlattice {

namespace {

void rotate_to_min(std::vector<HalfEdge>& v) {
  if (v.empty()) return;
  std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
}

void rotate_to_min(Triple& t) {
  auto it = std::min_element(t.begin(), t.end());
  std::rotate(t.begin(), it, t.end());
}

int triple_parity(const Triple& t) {
  int inversions = (t[0] > t[1]) + (t[0] > t[2]) + (t[1] > t[2]);
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

std::uint32_t derived_visible_mask(int label_count, const std::vector<HalfEdge>& legs,
                                   const std::vector<Triple>& trivalent) {
  std::uint32_t mask = 0;
  for (HalfEdge h : legs) mask |= 1u << edge_of(h);
  for (const auto& t : trivalent)
    for (HalfEdge h : t) mask |= 1u << edge_of(h);
  if (label_count < kMaxLabels) mask &= (1u << label_count) - 1;
  return mask;
}

LabelledDiagram::LabelledDiagram(int n, int k, std::vector<HalfEdge> legs,
                                 std::vector<Triple> trivalent)
    : n_(n), k_(k), legs_(std::move(legs)), trivalent_(std::move(trivalent)) {
  check_ranges();
  visible_ = derived_visible_mask(label_count(), legs_, trivalent_);
  normalize();
}

LabelledDiagram::LabelledDiagram(int n, int k, std::vector<HalfEdge> legs,
                                 std::vector<Triple> trivalent, std::uint32_t declared_visible)
    : n_(n), k_(k), legs_(std::move(legs)), trivalent_(std::move(trivalent)),
      visible_(declared_visible) {
  check_ranges();
  normalize();
}

void LabelledDiagram::check_ranges() const {
  const int labels = label_count();
  if (labels < 0 || labels > kMaxLabels)
    throw std::invalid_argument("label count 3n-k out of range");
  const int halves = 2 * labels;
  for (HalfEdge h : legs_)
    if (h >= halves) throw std::invalid_argument("leg half-edge out of range");
  for (const auto& t : trivalent_)
    for (HalfEdge h : t)
      if (h >= halves) throw std::invalid_argument("trivalent half-edge out of range");
}

void LabelledDiagram::normalize() {
  rotate_to_min(legs_);
  for (auto& t : trivalent_) rotate_to_min(t);
  std::sort(trivalent_.begin(), trivalent_.end());
}

std::uint32_t LabelledDiagram::used_mask() const {
  return derived_visible_mask(label_count(), legs_, trivalent_);
}

std::vector<int> LabelledDiagram::visible_edges() const {
  std::vector<int> out;
  for (int i = 0; i < label_count(); ++i)
    if (visible_ >> i & 1u) out.push_back(i);
  return out;
}

std::vector<int> LabelledDiagram::absent_edges() const {
  std::vector<int> out;
  for (int i = 0; i < label_count(); ++i)
    if (!(visible_ >> i & 1u)) out.push_back(i);
  return out;
}

int LabelledDiagram::visible_edge_count() const { return std::popcount(visible_); }

std::vector<int> LabelledDiagram::vertex_of_half_edge() const {
  std::vector<int> owner(half_edge_count(), -1);
  int v = 0;
  for (HalfEdge h : legs_) owner[h] = v++;
  for (const auto& t : trivalent_) {
    for (HalfEdge h : t) owner[h] = v;
    ++v;
  }
  return owner;
}

int LabelledDiagram::orientation_parity() const {
  int s = 1;
  for (const auto& t : trivalent_) s *= triple_parity(t);
  return s;
}

LabelledDiagram LabelledDiagram::with_reversed_vertex(int t) const {
  LabelledDiagram out = *this;
  std::swap(out.trivalent_.at(t)[1], out.trivalent_.at(t)[2]);
  return out;
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::kDegreeRange: return "degree-range";
    case Condition::kTrivalentEdges: return "trivalent-distinct-edges";
    case Condition::kPartition: return "half-edge-partition";
    case Condition::kVisibleEdges: return "visible-edges";
    case Condition::kVertexCount: return "vertex-count";
    case Condition::kTriplyConnected: return "triply-connected";
  }
  return "unknown";
}

std::vector<Violation> validate(const LabelledDiagram& d, bool require_triply_connected) {
  std::vector<Violation> out;
  const int n = d.degree();
  if (n < 1 || d.k() > 2 * n)
    out.push_back({Condition::kDegreeRange, "need n >= 1 and k <= 2n"});

  for (std::size_t i = 0; i < d.trivalent().size(); ++i) {
    const auto& t = d.trivalent()[i];
    if (edge_of(t[0]) == edge_of(t[1]) || edge_of(t[0]) == edge_of(t[2]) ||
        edge_of(t[1]) == edge_of(t[2]))
      out.push_back({Condition::kTrivalentEdges,
                     "trivalent vertex " + std::to_string(i) + " repeats an edge"});
  }

  std::vector<int> uses(d.half_edge_count(), 0);
  for (HalfEdge h : d.legs()) ++uses[h];
  for (const auto& t : d.trivalent())
    for (HalfEdge h : t) ++uses[h];
  for (int h = 0; h < d.half_edge_count(); ++h)
    if (uses[h] > 1)
      out.push_back({Condition::kPartition,
                     "half-edge " + std::to_string(h + 1) + " used " + std::to_string(uses[h]) +
                         " times"});
  for (int e = 0; e < d.label_count(); ++e) {
    const bool a = uses[2 * e] > 0;
    const bool b = uses[2 * e + 1] > 0;
    if (a != b)
      out.push_back({Condition::kPartition,
                     "edge " + std::to_string(e + 1) + " has a single half-edge in use"});
  }

  if (d.visible_mask() != d.used_mask())
    out.push_back({Condition::kVisibleEdges, "declared E^v differs from the edges in use"});

  if (d.vertex_count() != 2 * n)
    out.push_back({Condition::kVertexCount, "#U + #T = " + std::to_string(d.vertex_count()) +
                                                 ", expected " + std::to_string(2 * n)});

  const bool structurally_sound = std::none_of(out.begin(), out.end(), [](const Violation& v) {
    return v.condition == Condition::kTrivalentEdges || v.condition == Condition::kPartition;
  });
  if (require_triply_connected && structurally_sound && !is_triply_connected(d))
    out.push_back({Condition::kTriplyConnected, "some A in T with #A > 1 has #E'_A < 3"});
  return out;
}

EdgeCounts edge_counts(const LabelledDiagram& d, const std::vector<int>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("edge_counts: empty vertex subset");
  std::vector<char> in(d.vertex_count(), 0);
  for (int v : vertices) {
    if (v < 0 || v >= d.vertex_count())
      throw std::invalid_argument("edge_counts: vertex out of range");
    in[v] = 1;
  }
  const auto owner = d.vertex_of_half_edge();
  EdgeCounts c;
  for (int e : d.visible_edges()) {
    const int a = owner[2 * e];
    const int b = owner[2 * e + 1];
    const int inside = (a >= 0 && in[a]) + (b >= 0 && in[b]);
    if (inside == 2) ++c.inner;
    if (inside == 1) ++c.border;
  }
  return c;
}

bool is_triply_connected(const LabelledDiagram& d) {
  const int t = d.trivalent_count();
  if (t < 2) return true;
  const int u = d.leg_count();
  const auto owner = d.vertex_of_half_edge();
  // neighbours[i] = vertices across the three edges of trivalent vertex i
  std::vector<std::array<int, 3>> neighbours(t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < 3; ++j) neighbours[i][j] = owner[partner(d.trivalent()[i][j])];
  for (std::uint32_t mask = 1; mask < (1u << t); ++mask) {
    if (std::popcount(mask) < 2) continue;
    int border = 0;
    for (int i = 0; i < t; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (int w : neighbours[i]) {
        const bool w_inside = w >= u && (mask >> (w - u) & 1u);
        if (!w_inside) ++border;
      }
    }
    if (border < 3) return false;
  }
  return true;
}

std::vector<int> component_labels(const LabelledDiagram& d) {
  const int nv = d.vertex_count();
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto owner = d.vertex_of_half_edge();
  for (int e : d.visible_edges()) {
    const int a = owner[2 * e];
    const int b = owner[2 * e + 1];
    if (a < 0 || b < 0) continue;
    parent[find(a)] = find(b);
  }
  std::vector<int> label(nv, -1), root_label(nv, -1);
  int next = 0;
  for (int v = 0; v < nv; ++v) {
    const int r = find(v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

int component_count(const LabelledDiagram& d) {
  const auto labels = component_labels(d);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

namespace {

struct ComponentStats {
  int vertices = 0;
  int legs = 0;
  int edges = 0;
};

std::vector<ComponentStats> component_stats(const LabelledDiagram& d) {
  const auto labels = component_labels(d);
  const int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<ComponentStats> stats(count);
  for (int v = 0; v < d.vertex_count(); ++v) {
    ++stats[labels[v]].vertices;
    if (v < d.leg_count()) ++stats[labels[v]].legs;
  }
  const auto owner = d.vertex_of_half_edge();
  for (int e : d.visible_edges())
    if (owner[2 * e] >= 0) ++stats[labels[owner[2 * e]]].edges;
  return stats;
}

}  // namespace

bool has_four_leg_property(const LabelledDiagram& d) {
  for (const auto& c : component_stats(d)) {
    const bool tree = c.edges == c.vertices - 1;
    if (!tree && c.legs < 4) return false;
  }
  return true;
}

bool components_are_chords_or_tripods(const LabelledDiagram& d) {
  for (const auto& c : component_stats(d)) {
    const bool chord = c.vertices == 2 && c.legs == 2;
    if (!chord && c.legs < 3) return false;
  }
  return true;
}

std::string to_record(const LabelledDiagram& d) {
  std::ostringstream os;
  os << "n=" << d.degree() << " k=" << d.k() << "\nU:";
  for (HalfEdge h : d.legs()) os << ' ' << h + 1;
  os << "\nT:";
  for (std::size_t i = 0; i < d.trivalent().size(); ++i) {
    const auto& t = d.trivalent()[i];
    os << (i == 0 ? " " : "; ") << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1;
  }
  os << "\nEv:";
  for (int e : d.visible_edges()) os << ' ' << e + 1;
  return os.str();
}

namespace {

std::string strip_prefix(const std::string& line, const std::string& prefix) {
  if (line.rfind(prefix, 0) != 0)
    throw std::invalid_argument("diagram record: expected line starting with '" + prefix + "'");
  return line.substr(prefix.size());
}

std::vector<int> parse_ints(const std::string& text) {
  std::istringstream is(text);
  std::vector<int> out;
  int x;
  while (is >> x) out.push_back(x);
  if (!is.eof()) throw std::invalid_argument("diagram record: malformed integer list");
  return out;
}

HalfEdge to_half_edge(int one_based) {
  if (one_based < 1 || one_based > 2 * kMaxLabels)
    throw std::invalid_argument("diagram record: half-edge out of range");
  return static_cast<HalfEdge>(one_based - 1);
}

}  // namespace

LabelledDiagram parse_record(const std::string& record) {
  std::istringstream is(record);
  std::string header, uline, tline, evline;
  if (!std::getline(is, header) || !std::getline(is, uline) || !std::getline(is, tline) ||
      !std::getline(is, evline))
    throw std::invalid_argument("diagram record: expected four lines");
  int n = 0, k = 0;
  if (std::sscanf(header.c_str(), "n=%d k=%d", &n, &k) != 2)
    throw std::invalid_argument("diagram record: bad header '" + header + "'");

  std::vector<HalfEdge> legs;
  for (int h : parse_ints(strip_prefix(uline, "U:"))) legs.push_back(to_half_edge(h));

  std::vector<Triple> trivalent;
  std::string body = strip_prefix(tline, "T:");
  std::istringstream ts(body);
  std::string chunk;
  while (std::getline(ts, chunk, ';')) {
    const auto xs = parse_ints(chunk);
    if (xs.empty()) continue;
    if (xs.size() != 3) throw std::invalid_argument("diagram record: triple needs 3 entries");
    trivalent.push_back({to_half_edge(xs[0]), to_half_edge(xs[1]), to_half_edge(xs[2])});
  }

  std::uint32_t visible = 0;
  for (int e : parse_ints(strip_prefix(evline, "Ev:"))) {
    if (e < 1 || e > kMaxLabels) throw std::invalid_argument("diagram record: bad edge index");
    visible |= 1u << (e - 1);
  }
  return LabelledDiagram(n, k, std::move(legs), std::move(trivalent), visible);
}

std::vector<LabelledDiagram> parse_records(std::istream& in) {
  std::vector<LabelledDiagram> out;
  std::string line, block;
  auto flush = [&] {
    if (!block.empty()) out.push_back(parse_record(block));
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      flush();
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  return out;
}

std::string to_records(const std::vector<LabelledDiagram>& ds) {
  std::string out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) out += "\n\n";
    out += to_record(ds[i]);
  }
  return out;
}

}  // namespace knotlattice
