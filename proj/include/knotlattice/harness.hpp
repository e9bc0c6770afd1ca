#pragma once

// Subcommand implementations behind the command-line tool.  Each returns a
// JSON report that embeds the configuration, a plain-text table for the
// same data and the exit status.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "knotlattice/lattice.hpp"

namespace knotlattice {

struct RunConfig {
  std::string command;  // enumerate, basis, verify, integrate, z2
  int n = 2;
  std::optional<int> k;  // verify runs every k when absent
  std::string curve = "trefoil";
  int p = 2;
  int q = 3;
  std::uint64_t samples = 4'000'000;
  std::uint64_t seed = 1;
  // Largest standard error of an integral that still counts as converged.
  double tolerance = 0.05;
  // Width of the closed-form and lattice checks, in standard errors.
  double sigmas = 3.0;
  int workers = 1;
  std::string out;  // empty: stdout
  std::string format = "json";
  std::string alpha = "paper";
  HeadParity parity = HeadParity::kEven;
  std::string diagram = "all";  // integrate: theta, crossed, parallel, tripod, all
  std::uint64_t record_limit = 0;  // enumerate: 0 emits every record
  bool pairing_structure = false;  // verify: also check the face pairing is an involution
};

// KNOTLATTICE_SEED if set and numeric, else 1.
std::uint64_t default_seed();

// Throws std::out_of_range or std::invalid_argument on a bad configuration.
void check_config(const RunConfig& config);

nlohmann::json config_json(const RunConfig& config);

struct CommandOutput {
  nlohmann::json report;
  std::string table;
  int status = 0;  // 0 ok, 1 violations or failed checks, 3 not converged
};

CommandOutput run_enumerate(const RunConfig& config);
CommandOutput run_basis(const RunConfig& config);
CommandOutput run_verify(const RunConfig& config);
CommandOutput run_integrate(const RunConfig& config);
CommandOutput run_z2(const RunConfig& config);

// Validates and dispatches on config.command.
CommandOutput run_command(const RunConfig& config);

// The report as indented JSON or the table, newline terminated.
std::string render(const CommandOutput& output, const std::string& format);

}  // namespace knotlattice
