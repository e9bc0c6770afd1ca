#pragma once

// Relations between labelled diagrams that make the boundary faces of the
// configuration space integrals glue: RSTU, RIHX (and its aggregate RIHX'),
// the pairing of faces with more than two collapsing vertices, and the
// re-insertion condition for component leg blocks.

#include <cstdint>
#include <string>
#include <vector>

#include "knotlattice/lattice.hpp"

namespace knotlattice {

enum class Relation { kRstu, kRihx, kRihxPrime };
std::string to_string(Relation r);

struct RelationTerm {
  int coefficient = 0;
  LabelledDiagram diagram;
};

// sum coefficient * alpha(diagram) = 0.
//
// RSTU: +U - S - sum over absent labels e and both directions of T.  U is a
// diagram with legs p, q adjacent in the cycle (p < q, different edges), S
// swaps them, T joins them at a new trivalent vertex (t, q, p) whose third
// edge e ends at a leg placed where p was; direction 0 puts the tail 2e at
// the leg.
//
// RIHX: for an internal edge e with outer half-edges a < b < c < d, the six
// diagrams ((e0, a, b), (e1, c, d)), ((e0, b, c), (e1, a, d)),
// ((e0, c, a), (e1, b, d)) with (e0, e1) = (2e, 2e+1) and (2e+1, 2e), all
// with coefficient +1.  Terms with a loop are left out.
struct RelationInstance {
  Relation kind = Relation::kRstu;
  std::vector<RelationTerm> terms;
  bool empty_rhs = false;  // RSTU without absent labels
};

struct InstanceCounts {
  std::uint64_t kept = 0;
  std::uint64_t dropped = 0;    // some diagram not triply connected
  std::uint64_t empty_rhs = 0;  // among the kept ones
};

// All instances, in enumeration order of the generating diagram.  Meant for
// small cases; check_gluing streams instead.
std::vector<RelationInstance> rstu_instances(int n, int k, InstanceCounts* counts = nullptr);
std::vector<RelationInstance> rihx_instances(int n, int k, InstanceCounts* counts = nullptr);
// RIHX instances summed over the label of the internal edge.
std::vector<RelationInstance> rihx_prime_instances(int n, int k);

// --- Faces with more than two vertices --------------------------------------

// Vertex subsets A (bitmask over vertex indices, legs first) for which the
// face of Gamma collapsing A is paired by a relabelling.
std::vector<unsigned> admissible_subsets(const LabelledDiagram& d);
// The partner of Gamma for the subset A: exchanges and reverses the two
// other edges at the end in A of the smallest label leaving A.  The vertex
// orientation is carried along.  `partner_subset` receives A in the vertex
// numbering of the partner.
LabelledDiagram face_partner(const LabelledDiagram& d, unsigned subset, unsigned* partner_subset = nullptr);

struct PairingReport {
  int n = 0;
  int k = 0;
  std::uint64_t faces = 0;
  std::uint64_t self_paired = 0;     // partner equals Gamma
  std::uint64_t not_involutive = 0;  // partner of the partner differs, or A stops being admissible
  bool ok() const { return not_involutive == 0; }
};
PairingReport check_pairing_structure(int n, int k);

// --- Checker ----------------------------------------------------------------

struct GluingViolation {
  std::string condition;
  std::vector<RelationTerm> terms;
  RationalVector residual;
};

struct ConditionReport {
  std::string name;
  bool automatic = false;  // satisfied by construction and not evaluated
  std::uint64_t checked = 0;
  std::uint64_t dropped = 0;
  std::uint64_t empty_rhs = 0;
  std::uint64_t violations = 0;
};

struct GluingReport {
  std::string alpha;
  int n = 0;
  int k = 0;
  std::vector<ConditionReport> conditions;  // rstu, rihx, rihx-prime, pairing, insertion
  std::vector<GluingViolation> violations;  // at most max_reported per condition
  std::uint64_t violation_count() const;
  bool ok() const { return violation_count() == 0; }
};

struct GluingOptions {
  int workers = 1;
  bool rihx_prime = true;
  std::size_t max_reported = 20;
};

GluingReport check_gluing(const AlphaMap& alpha, int n, int k, const GluingOptions& options = {});

}  // namespace knotlattice
