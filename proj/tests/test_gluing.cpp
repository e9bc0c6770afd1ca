#include <memory>
#include <random>

#include "doctest.h"
#include "knotlattice/enumerate.hpp"
#include "knotlattice/gluing.hpp"

using namespace knotlattice;

TEST_CASE("degree one generates no RSTU or RIHX instances") {
  for (int k = 0; k <= 2; ++k) {
    CHECK(rstu_instances(1, k).empty());
    CHECK(rihx_instances(1, k).empty());
  }
}

TEST_CASE("RSTU instances at n = 2") {
  InstanceCounts c4;
  const auto at4 = rstu_instances(2, 4, &c4);
  bool empty_rhs = false;
  for (const auto& r : at4) empty_rhs |= r.empty_rhs;
  CHECK(empty_rhs);
  CHECK(c4.empty_rhs > 0);

  const auto at3 = rstu_instances(2, 3);
  bool nonempty = false;
  for (const auto& r : at3) nonempty |= !r.empty_rhs && r.terms.size() > 2;
  CHECK(nonempty);
  for (const auto& r : at3) {
    CHECK(r.terms.front().coefficient == 1);
    CHECK(r.terms[1].coefficient == -1);
  }
}

TEST_CASE("RIHX instances have six terms before loops are removed") {
  for (int k = 0; k <= 2; ++k)
    for (const auto& r : rihx_instances(2, k)) {
      CHECK(r.terms.size() <= 6);
      for (const auto& t : r.terms) CHECK(t.coefficient == 1);
    }
}

TEST_CASE("alpha_paper glues at n = 2 for every k") {
  for (int k = 0; k <= 4; ++k) {
    CAPTURE(k);
    const PaperAlpha alpha(2, k);
    const GluingReport r = check_gluing(alpha, 2, k);
    CHECK(r.ok());
    CHECK(r.conditions.size() == 5);
  }
}

TEST_CASE("Polyak-Viro glues for both parity classes") {
  for (HeadParity p : {HeadParity::kEven, HeadParity::kOdd}) {
    const PolyakViroAlpha alpha(p);
    const GluingReport r = check_gluing(alpha, 2, 3);
    CHECK(r.ok());
  }
}

TEST_CASE("mutating one value is detected") {
  std::mt19937 rng(5);
  for (int k = 0; k <= 4; ++k) {
    auto base = std::make_shared<PaperAlpha>(2, k);
    const auto all = enumerate_labelled(2, k);
    for (int trial = 0; trial < 3; ++trial) {
      const auto& target = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
      RationalVector delta(base->dimension(), 0);
      delta[std::uniform_int_distribution<int>(0, base->dimension() - 1)(rng)] = Rational(1, 7 + trial);
      const MutatedAlpha m(base, target, delta);
      CAPTURE(to_record(target));
      CHECK_FALSE(check_gluing(m, 2, k).ok());
    }
  }
}

TEST_CASE("face pairing is a fixed-point-free involution at n = 2") {
  for (int k = 0; k <= 4; ++k) {
    const PairingReport r = check_pairing_structure(2, k);
    CHECK(r.ok());
    CHECK(r.self_paired == 0);
  }
}

TEST_CASE("check_gluing rejects a mismatched alpha") {
  const PaperAlpha alpha(2, 3);
  CHECK_THROWS(check_gluing(alpha, 2, 2));
}
