// knotlattice: enumerate, basis, verify, integrate, z2.
//
// Exit status: 0 ok, 1 violations or failed checks, 2 usage or range error,
// 3 an integral did not converge.

#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "knotlattice/harness.hpp"

using knotlattice::RunConfig;

namespace {

void add_algebra_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--n", c.n, "degree")->capture_default_str();
  cmd->add_option("--k", c.k, "number of labelled legs, 0..2n");
  cmd->add_option("--workers", c.workers, "worker threads")->capture_default_str();
}

void add_integral_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--curve", c.curve, "preset (circle, torus, trefoil, trefoil-alt, figure-eight, wobbly) or polyline file")
      ->capture_default_str();
  cmd->add_option("--p", c.p, "torus knot p")->capture_default_str();
  cmd->add_option("--q", c.q, "torus knot q")->capture_default_str();
  cmd->add_option("--samples", c.samples, "Monte Carlo samples")->capture_default_str();
  cmd->add_option("--seed", c.seed, "RNG seed (default: KNOTLATTICE_SEED or 1)")->capture_default_str();
  cmd->add_option("--tol", c.tolerance, "largest standard error that counts as converged")->capture_default_str();
  cmd->add_option("--workers", c.workers, "worker threads")->capture_default_str();
  // Integrals are implemented for degree 2 and below.
  cmd->add_option("--n", c.n, "degree (at most 2)")->capture_default_str();
}

void add_output_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--out", c.out, "output file (default stdout)");
  cmd->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  config.seed = knotlattice::default_seed();

  CLI::App app{"Labelled trivalent diagrams, their gluing relations and degree-2 knot integrals"};
  app.require_subcommand(1);

  auto* enumerate = app.add_subcommand("enumerate", "class table and text records of D_{n,k}");
  add_algebra_options(enumerate, config);
  enumerate->add_option("--limit", config.record_limit, "emit at most this many records (0: all)")->capture_default_str();
  add_output_options(enumerate, config);

  auto* basis = app.add_subcommand("basis", "basis of A_n (or A_n^k) and class coordinates");
  add_algebra_options(basis, config);
  add_output_options(basis, config);

  auto* verify = app.add_subcommand("verify", "counting identity, gluing relations and lattice generators");
  add_algebra_options(verify, config);
  verify->add_option("--alpha", config.alpha, "paper or polyak-viro")
      ->check(CLI::IsMember({"paper", "polyak-viro"}))
      ->capture_default_str();
  std::string parity = "even";
  verify->add_option("--parity", parity, "head parity class weighted by -1/24 (polyak-viro)")
      ->check(CLI::IsMember({"even", "odd"}))
      ->capture_default_str();
  verify->add_flag("--pairing-structure", config.pairing_structure, "check that the face pairing is an involution");
  add_output_options(verify, config);

  auto* integrate = app.add_subcommand("integrate", "configuration space integral of one diagram class");
  add_integral_options(integrate, config);
  integrate->add_option("--diagram", config.diagram, "theta, crossed, parallel, tripod or all")
      ->check(CLI::IsMember({"theta", "crossed", "parallel", "tripod", "all"}))
      ->capture_default_str();
  add_output_options(integrate, config);

  auto* z2 = app.add_subcommand("z2", "degree-2 term, v2, closed form and lattice check");
  add_integral_options(z2, config);
  z2->add_option("--sigmas", config.sigmas, "tolerance of the checks in standard errors")->capture_default_str();
  add_output_options(z2, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.parity = parity == "odd" ? knotlattice::HeadParity::kOdd : knotlattice::HeadParity::kEven;

  knotlattice::CommandOutput output;
  try {
    output = knotlattice::run_command(config);
  } catch (const std::out_of_range& e) {
    std::cerr << "knotlattice: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "knotlattice: " << e.what() << "\n";
    return 2;
  }

  const std::string text = knotlattice::render(output, config.format);
  if (config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      std::cerr << "knotlattice: cannot write '" << config.out << "'\n";
      return 2;
    }
    file << text;
  }
  return output.status;
}
