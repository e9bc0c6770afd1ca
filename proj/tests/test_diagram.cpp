#include <random>
#include <sstream>

#include "doctest.h"
#include "knotlattice/canonical.hpp"
#include "knotlattice/diagram.hpp"
#include "knotlattice/enumerate.hpp"
#include "oracles.hpp"

using namespace knotlattice;

namespace {

bool has(const std::vector<Violation>& v, Condition c) {
  for (const auto& x : v)
    if (x.condition == c) return true;
  return false;
}

LabelledDiagram theta() { return LabelledDiagram(1, 2, {0, 1}, {}); }
// Two trivalent vertices joined by a double edge, one leg each.
LabelledDiagram double_edge() { return LabelledDiagram(2, 2, {0, 2}, {{1, 4, 6}, {3, 5, 7}}); }
LabelledDiagram tripod() { return LabelledDiagram(2, 3, {0, 2, 4}, {{1, 3, 5}}); }
LabelledDiagram wheel3() {
  return LabelledDiagram(3, 3, {0, 2, 4}, {{1, 6, 11}, {3, 7, 8}, {5, 9, 10}});
}
LabelledDiagram crossed() { return LabelledDiagram(2, 4, {0, 2, 1, 3}, {}); }
LabelledDiagram parallel() { return LabelledDiagram(2, 4, {0, 1, 2, 3}, {}); }

// Relabels edges by `perm` and flips the edges in `flips`, carrying the
// vertex orientation along.
LabelledDiagram relabel(const LabelledDiagram& d, const std::vector<int>& perm, unsigned flips) {
  auto map = [&](HalfEdge h) {
    return static_cast<HalfEdge>(2 * perm[h / 2] + ((h & 1) ^ ((flips >> (h / 2)) & 1)));
  };
  std::vector<HalfEdge> legs;
  for (HalfEdge h : d.legs()) legs.push_back(map(h));
  std::vector<Triple> tri;
  for (const auto& t : d.trivalent()) tri.push_back({map(t[0]), map(t[1]), map(t[2])});
  return LabelledDiagram(d.degree(), d.k(), legs, tri);
}

}  // namespace

TEST_CASE("validate: theta is legal, counts are enforced, double edge is not triply connected") {
  CHECK(validate(theta()).empty());
  CHECK(has(validate(LabelledDiagram(2, 2, {0, 1}, {})), Condition::kVertexCount));
  const auto v = validate(double_edge());
  CHECK(has(v, Condition::kTriplyConnected));
  CHECK(v.size() == 1);
  CHECK(validate(double_edge(), false).empty());
  // A vertex on two halves of one edge.
  CHECK(has(validate(LabelledDiagram(2, 3, {0, 2, 4}, {{1, 2, 3}}), false), Condition::kTrivalentEdges));
}

TEST_CASE("edge counts satisfy 2#E_A + #E'_A = 3#(A cap T) + #(A cap U)") {
  CHECK(edge_counts(theta(), {0, 1}).inner == 1);
  CHECK(edge_counts(theta(), {0, 1}).border == 0);
  CHECK(edge_counts(tripod(), {3}).inner == 0);
  CHECK(edge_counts(tripod(), {3}).border == 3);
  CHECK(edge_counts(double_edge(), {2, 3}).inner == 2);
  CHECK(edge_counts(double_edge(), {2, 3}).border == 2);
  CHECK_THROWS_AS(edge_counts(theta(), {}), std::invalid_argument);

  std::mt19937 rng(7);
  for (int k = 0; k <= 4; ++k) {
    for (const auto& d : enumerate_labelled(2, k)) {
      const int v = d.vertex_count();
      const unsigned mask = std::uniform_int_distribution<unsigned>(1, (1u << v) - 1)(rng);
      std::vector<int> a;
      int legs = 0;
      int tri = 0;
      for (int i = 0; i < v; ++i)
        if ((mask >> i) & 1) {
          a.push_back(i);
          (i < d.leg_count() ? legs : tri)++;
        }
      const EdgeCounts c = edge_counts(d, a);
      CHECK(2 * c.inner + c.border == 3 * tri + legs);
    }
  }
}

TEST_CASE("triple connectivity examples") {
  CHECK(is_triply_connected(crossed()));
  CHECK(is_triply_connected(parallel()));
  CHECK_FALSE(is_triply_connected(double_edge()));
  CHECK(is_triply_connected(wheel3()));
  CHECK(edge_counts(wheel3(), {3, 4, 5}).border == 3);
}

TEST_CASE("four-leg property") {
  CHECK(has_four_leg_property(crossed()));
  CHECK_FALSE(has_four_leg_property(double_edge()));
  // Double edge with two legs plus a separate chord: the cyclic component
  // still has only two legs.
  CHECK_FALSE(has_four_leg_property(LabelledDiagram(3, 4, {0, 2, 8, 9}, {{1, 4, 6}, {3, 5, 7}})));
  // The H diagram is a tree.
  CHECK(has_four_leg_property(LabelledDiagram(3, 4, {0, 2, 4, 6}, {{1, 3, 8}, {5, 7, 9}})));
}

TEST_CASE("canonical form: theta labellings agree, crossed and parallel differ") {
  const LabelledDiagram t1 = theta();
  const LabelledDiagram t2(1, 2, {1, 0}, {});
  CHECK(canonical_form(t1).key == canonical_form(t2).key);
  CHECK(canonical_form(crossed()).key != canonical_form(parallel()).key);
}

TEST_CASE("automorphism counts match the brute-force oracle at n <= 2") {
  CHECK(canonical_form(theta()).automorphisms == 2);
  CHECK(canonical_form(crossed()).automorphisms == 4);
  for (int n = 1; n <= 2; ++n)
    for (const auto& c : enumerate_classes(n)) {
      CAPTURE(c.key);
      CHECK(c.automorphisms == oracle::automorphism_count(c.representative));
    }
  CHECK(oracle::automorphism_count(representative(canonical_form(parallel()).key)) == 2);
}

TEST_CASE("canonical form is invariant under relabelling and edge reversal") {
  std::mt19937 rng(11);
  for (int k = 0; k <= 4; k += 2) {
    const auto all = enumerate_labelled(2, k);
    for (std::size_t i = 0; i < all.size(); i += 7) {
      const auto& d = all[i];
      std::vector<int> perm(d.label_count());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const unsigned flips = std::uniform_int_distribution<unsigned>(0, (1u << d.label_count()) - 1)(rng);
      const CanonicalForm a = canonical_form(d);
      const CanonicalForm b = canonical_form(relabel(d, perm, flips));
      CHECK(a.key == b.key);
      CHECK(a.sign == b.sign);
      CHECK(canonical_form(representative(a.key)).key == a.key);
    }
  }
}

TEST_CASE("enumerate_labelled equals the brute-force generator at n <= 2") {
  for (int n = 1; n <= 2; ++n)
    for (int k = 0; k <= 2 * n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const auto ours = enumerate_labelled(n, k);
      std::set<oracle::Shape> shapes;
      for (const auto& d : ours) shapes.insert(oracle::shape_of(d));
      CHECK(shapes.size() == ours.size());
      CHECK(shapes == oracle::brute_force_shapes(n, k));
    }
  CHECK(enumerate_labelled(1, 2).size() == 1);
}

TEST_CASE("labellings per class follow (3n-k)!/(u-k)! 2^(3n-u) / |Gamma|") {
  for (int n = 1; n <= 2; ++n)
    for (int k = 0; k <= 2 * n; ++k) {
      std::map<ClassKey, std::uint64_t> seen;
      for (const auto& d : enumerate_labelled(n, k)) ++seen[canonical_form(d).key];
      for (const auto& c : labelled_classes(n, k)) {
        std::uint64_t expected = 1;
        for (int i = c.legs - k + 1; i <= 3 * n - k; ++i) expected *= i;
        expected <<= (3 * n - c.legs);
        CHECK(expected % c.automorphisms == 0);
        CHECK(seen[c.key] == expected / c.automorphisms);
        CHECK(labelling_count(c, k) == expected / c.automorphisms);
      }
    }
}

TEST_CASE("enumerate rejects out-of-range n and k") {
  CHECK_THROWS_AS(enumerate_labelled(1, 3), std::out_of_range);
  CHECK_THROWS_AS(enumerate_labelled(4, 0), std::out_of_range);
  CHECK_THROWS_AS(enumerate_labelled(0, 0), std::out_of_range);
}

TEST_CASE("class flags at n = 1, 2") {
  CHECK(enumerate_classes(1).size() == 1);
  bool saw_double_edge = false;
  for (const auto& c : enumerate_classes(2))
    if (c.key == canonical_form(double_edge()).key) {
      saw_double_edge = true;
      CHECK_FALSE(c.triply_connected);
      CHECK_FALSE(c.four_leg);
    }
  CHECK(saw_double_edge);
}

TEST_CASE("text format round trip") {
  for (int n = 1; n <= 2; ++n)
    for (int k = 0; k <= 2 * n; ++k) {
      const auto all = enumerate_labelled(n, k);
      for (const auto& d : all) CHECK(parse_record(to_record(d)) == d);
      std::istringstream in(to_records(all));
      CHECK(parse_records(in) == all);
    }
  CHECK(to_record(theta()) == "n=1 k=2\nU: 1 2\nT:\nEv: 1");
  CHECK(parse_record(to_record(wheel3())) == wheel3());
}
