#include <cstdlib>
#include <set>

#include "doctest.h"
#include "knotlattice/canonical.hpp"
#include "knotlattice/harness.hpp"

using namespace knotlattice;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST_CASE("enumerate reports and round-trips records") {
  RunConfig c = config("enumerate");
  c.n = 1;
  c.k = 2;
  const CommandOutput one = run_command(c);
  CHECK(one.status == 0);
  CHECK(one.report["labelled_diagrams"] == 1);
  REQUIRE(one.report["records"].size() == 1);
  CHECK(one.report["classes"][0]["automorphisms"] == 2);

  c.n = 2;
  c.k = 4;
  const CommandOutput two = run_command(c);
  REQUIRE(two.report["classes"].size() == 2);
  std::set<int> aut;
  for (const auto& cls : two.report["classes"]) aut.insert(cls["automorphisms"].get<int>());
  CHECK(aut == std::set<int>{2, 4});
  for (const auto& r : two.report["records"]) CHECK(to_record(parse_record(r.get<std::string>())) == r.get<std::string>());
  CHECK(two.report["round_trip"] == true);
  CHECK(two.report["config"]["n"] == 2);

  c.format = "table";
  c.record_limit = 1;
  const CommandOutput table = run_command(c);
  CHECK(table.table.find("|Gamma|") != std::string::npos);
  CHECK(table.report["records_emitted"] == 1);
}

TEST_CASE("invalid ranges are rejected") {
  RunConfig c = config("enumerate");
  c.n = 1;
  c.k = 3;
  CHECK_THROWS_AS(run_command(c), std::out_of_range);
  c.n = 4;
  c.k = 0;
  CHECK_THROWS_AS(run_command(c), std::out_of_range);
  RunConfig z = config("z2");
  z.n = 3;
  CHECK_THROWS_AS(run_command(z), std::out_of_range);
  RunConfig v = config("verify");
  v.alpha = "polyak-viro";
  v.k = 2;
  CHECK_THROWS_AS(run_command(v), std::out_of_range);
  CHECK_THROWS_AS(run_command(config("frobnicate")), std::invalid_argument);
}

TEST_CASE("basis and verify") {
  RunConfig b = config("basis");
  b.n = 2;
  const CommandOutput basis = run_command(b);
  CHECK(basis.report["dimension"] == 2);
  CHECK(basis.report["basis"].size() == 2);
  for (const auto& x : basis.report["basis"])
    CHECK(to_record(parse_record(x["record"].get<std::string>())) == x["record"].get<std::string>());

  RunConfig v = config("verify");
  v.n = 2;
  v.k = 3;
  const CommandOutput ok = run_command(v);
  CHECK(ok.status == 0);
  CHECK(ok.report["violation_count"] == 0);
  CHECK(ok.report["instances_checked"].get<int>() > 0);
  const auto& lattice = ok.report["results"][0]["lattice"];
  CHECK(lattice["generators"].size() > 0);
  for (const auto& m : lattice["membership_results"])
    if (m["four_leg"].get<bool>()) CHECK(m["member"] == true);

  v.alpha = "polyak-viro";
  v.parity = HeadParity::kOdd;
  CHECK(run_command(v).status == 0);
}

TEST_CASE("integrate and z2 reports embed the configuration and are deterministic") {
  RunConfig i = config("integrate");
  i.curve = "trefoil";
  i.samples = 20'000;
  i.diagram = "theta";
  const CommandOutput e = run_command(i);
  for (const char* key : {"integral", "stderr", "samples", "seed"}) CHECK(e.report.contains(key));
  CHECK(e.report["config"]["samples"] == 20'000);

  RunConfig z = config("z2");
  z.curve = "trefoil";
  z.samples = 50'000;
  z.seed = 9;
  const std::string a = render(run_command(z), "json");
  const std::string b = render(run_command(z), "json");
  CHECK(a == b);
  z.seed = 10;
  CHECK(render(run_command(z), "json") != a);
}

TEST_CASE("seed default reads the environment") {
  setenv("KNOTLATTICE_SEED", "77", 1);
  CHECK(default_seed() == 77);
  setenv("KNOTLATTICE_SEED", "x", 1);
  CHECK(default_seed() == 1);
  unsetenv("KNOTLATTICE_SEED");
  CHECK(default_seed() == 1);
}
