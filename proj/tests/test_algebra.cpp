#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <random>

#include "doctest.h"
#include "knotlattice/algebra.hpp"
#include "knotlattice/hopf.hpp"
#include "knotlattice/lattice.hpp"
#include "oracles.hpp"

using namespace knotlattice;

namespace {

LabelledDiagram tripod() { return LabelledDiagram(2, 3, {0, 2, 4}, {{1, 3, 5}}); }

GradedElement random_primitive(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  GradedElement p;
  for (int d = 1; d <= kMaxAlgebraDegree; ++d)
    for (const auto& g : primitive_generators(d)) add_scaled(p.parts[d], Rational(num(rng), den(rng)), g);
  return normalize(p);
}

}  // namespace

TEST_CASE("four-term oracle") {
  int count = 0;
  CHECK(oracle::four_term_dimension(1, &count) == 1);
  CHECK(count == 1);
  CHECK(oracle::four_term_dimension(2, &count) == 2);
  CHECK(count == 2);
  CHECK(oracle::four_term_dimension(3, &count) == 3);
  CHECK(count == 5);
}

TEST_CASE("quotient dimensions agree with the four-term oracle") {
  CHECK(quotient_space(1).dimension() == 1);
  for (int n = 2; n <= 3; ++n) CHECK(quotient_space(n).dimension() == oracle::four_term_dimension(n));
  for (int k = 0; k <= 2; ++k) CHECK(quotient_space_nk(1, k).dimension() == 1);
}

TEST_CASE("AS sign normalization") {
  const LabelledDiagram t(1, 2, {0, 1}, {});
  CHECK(as_sign_normalize(t).sign == 1);
  const LabelledDiagram y = tripod();
  CHECK(as_sign_normalize(y).sign * as_sign_normalize(y.with_reversed_vertex(0)).sign == -1);
  const LabelledDiagram w(3, 3, {0, 2, 4}, {{1, 6, 11}, {3, 7, 8}, {5, 9, 10}});
  CHECK(as_sign_normalize(w).sign == as_sign_normalize(w.with_reversed_vertex(0).with_reversed_vertex(2)).sign);
}

TEST_CASE("degree one has no STU or IHX relations") {
  CHECK(stu_relations(1).empty());
  CHECK(ihx_relations(1).empty());
}

TEST_CASE("reduce_to_chords") {
  const auto& cls = degree_two_classes();
  DiagramVector cr{{cls.crossed, 1}};
  CHECK(reduce_to_chords(cls.crossed) == cr);
  const DiagramVector r = reduce_to_chords(cls.tripod);
  REQUIRE(r.size() == 2);
  CHECK(r.count(cls.crossed) == 1);
  CHECK(r.count(cls.parallel) == 1);
  CHECK(r.at(cls.crossed) == -r.at(cls.parallel));
  const auto& a2 = quotient_space(2);
  CHECK(a2.coordinates(r) == a2.coordinates(cls.tripod));
  for (const auto& c : enumerate_classes(3)) {
    if (!c.triply_connected) continue;
    CHECK(quotient_space(3).coordinates(reduce_to_chords(c.key)) == quotient_space(3).coordinates(c.key));
  }
}

TEST_CASE("product: unit, theta squared, commutativity") {
  const auto& cls = degree_two_classes();
  const ClassKey theta = enumerate_classes(1).front().key;
  const GradedElement x = GradedElement::of(DiagramVector{{cls.tripod, 3}});
  CHECK(equal_in_algebra(product(GradedElement::scalar(1), x), x));
  const DiagramVector tt = product(theta, theta);
  CHECK(quotient_space(2).coordinates(tt) == quotient_space(2).coordinates(cls.parallel));
  for (const auto& a : enumerate_classes(1))
    for (const auto& b : enumerate_classes(2)) {
      if (b.as_zero) continue;
      CHECK(quotient_space(3).coordinates(product(a.key, b.key)) ==
            quotient_space(3).coordinates(product(b.key, a.key)));
    }
}

TEST_CASE("coproduct") {
  const ClassKey theta = enumerate_classes(1).front().key;
  const TensorVector d = coproduct(theta);
  CHECK(d.size() == 2);
  CHECK(d.at({theta, kEmptyKey}) == 1);
  CHECK(d.at({kEmptyKey, theta}) == 1);
  const TensorVector p = coproduct(degree_two_classes().parallel);
  Rational total = 0;
  for (const auto& [key, c] : p) total += c;
  CHECK(total == 4);
  CHECK(p.at({theta, theta}) == 2);
  CHECK(is_primitive_up_to(GradedElement::of(DiagramVector{{degree_two_classes().tripod, 1}}), 3));
}

TEST_CASE("exp of primitives is grouplike and log inverts it") {
  std::mt19937 rng(3);
  const ClassKey theta = enumerate_classes(1).front().key;
  for (int c = -2; c <= 2; ++c) {
    const GradedElement e = exp_truncated(GradedElement::of(DiagramVector{{theta, Rational(c, 3)}}));
    CHECK(is_grouplike_up_to(e, 3));
  }
  for (int i = 0; i < 10; ++i) {
    const GradedElement p = random_primitive(rng);
    const GradedElement g = exp_truncated(p);
    CHECK(is_grouplike_up_to(g, 3));
    CHECK(equal_in_algebra(log_truncated(g), p));
    CHECK(is_primitive_up_to(log_truncated(g), 3));
  }
  CHECK_THROWS_AS(log_truncated(GradedElement::scalar(2)), std::invalid_argument);
}
