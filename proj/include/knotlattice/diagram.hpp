#pragma once

// Labelled uni-trivalent diagrams with a cyclic order on their legs.
//
// Half-edges are stored 0-based: edge i owns half-edges 2i and 2i+1 and is
// directed from 2i to 2i+1.  The text format shifts everything to 1-based
// labels, so edge i (1-based) is {2i-1, 2i}.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace knotlattice {

using HalfEdge = std::uint8_t;
using Triple = std::array<HalfEdge, 3>;

constexpr int edge_of(HalfEdge h) { return h >> 1; }
constexpr HalfEdge partner(HalfEdge h) { return static_cast<HalfEdge>(h ^ 1); }

// Largest label count supported by the bitmask representation of E^v.
constexpr int kMaxLabels = 32;

class LabelledDiagram {
 public:
  LabelledDiagram() = default;

  // Builds a diagram in D_{n,k} shape.  Legs are given in cyclic order; each
  // triple lists the half-edges of a trivalent vertex in its orientation
  // order.  The visible edge set is derived from the half-edges in use.
  // Throws std::invalid_argument when an index is out of range.
  LabelledDiagram(int n, int k, std::vector<HalfEdge> legs, std::vector<Triple> trivalent);

  // Same, with an explicitly declared visible edge set (as read from the text
  // format).  The declaration is checked by validate(), not here.
  LabelledDiagram(int n, int k, std::vector<HalfEdge> legs, std::vector<Triple> trivalent,
                  std::uint32_t declared_visible);

  int degree() const { return n_; }
  int k() const { return k_; }
  int label_count() const { return 3 * n_ - k_; }
  int half_edge_count() const { return 2 * label_count(); }

  const std::vector<HalfEdge>& legs() const { return legs_; }
  const std::vector<Triple>& trivalent() const { return trivalent_; }
  int leg_count() const { return static_cast<int>(legs_.size()); }
  int trivalent_count() const { return static_cast<int>(trivalent_.size()); }
  int vertex_count() const { return leg_count() + trivalent_count(); }

  std::uint32_t visible_mask() const { return visible_; }
  std::uint32_t used_mask() const;
  std::vector<int> visible_edges() const;
  std::vector<int> absent_edges() const;
  int visible_edge_count() const;

  // Vertices are numbered legs first (in cyclic order), then trivalent
  // vertices in stored order.  Returns -1 for unused half-edges.
  std::vector<int> vertex_of_half_edge() const;

  // Sign +1 / -1: product over vertices of the parity of the orientation
  // relative to increasing half-edge order.
  int orientation_parity() const;

  // Reverses the cyclic orientation of trivalent vertex `t`.
  LabelledDiagram with_reversed_vertex(int t) const;

  friend bool operator==(const LabelledDiagram&, const LabelledDiagram&) = default;
  friend auto operator<=>(const LabelledDiagram&, const LabelledDiagram&) = default;

 private:
  void normalize();
  void check_ranges() const;

  int n_ = 0;
  int k_ = 0;
  std::vector<HalfEdge> legs_;
  std::vector<Triple> trivalent_;
  std::uint32_t visible_ = 0;
};

std::uint32_t derived_visible_mask(int label_count, const std::vector<HalfEdge>& legs,
                                   const std::vector<Triple>& trivalent);

enum class Condition {
  kDegreeRange,       // n >= 1 and k <= 2n
  kTrivalentEdges,    // each trivalent vertex meets three different edges
  kPartition,         // E^a, T and U partition the half-edges
  kVisibleEdges,      // declared E^v matches the half-edges in use
  kVertexCount,       // #U + #T = 2n
  kTriplyConnected,
};

struct Violation {
  Condition condition;
  std::string detail;
};

std::string to_string(Condition c);

// Reports every violated condition; an empty result means the diagram lies in
// D_{n,k}.  Triple connectivity is only checked when requested.
std::vector<Violation> validate(const LabelledDiagram& d, bool require_triply_connected = true);

struct EdgeCounts {
  int inner = 0;   // #E_A: both half-edges inside A
  int border = 0;  // #E'_A: exactly one half-edge inside A
};

// `vertices` uses the vertex numbering of vertex_of_half_edge().  Only visible
// edges are counted.  Throws std::invalid_argument on an empty subset.
EdgeCounts edge_counts(const LabelledDiagram& d, const std::vector<int>& vertices);

bool is_triply_connected(const LabelledDiagram& d);

// Connected component id per vertex, ids assigned in order of first vertex.
std::vector<int> component_labels(const LabelledDiagram& d);
int component_count(const LabelledDiagram& d);

// Every component containing a cycle has at least four legs.
bool has_four_leg_property(const LabelledDiagram& d);

// Every component is a chord or has at least three legs.
bool components_are_chords_or_tripods(const LabelledDiagram& d);

// Text record (four lines, no trailing newline).
std::string to_record(const LabelledDiagram& d);
LabelledDiagram parse_record(const std::string& record);
// Records separated by blank lines.
std::vector<LabelledDiagram> parse_records(std::istream& in);
std::string to_records(const std::vector<LabelledDiagram>& ds);

}  // namespace knotlattice
