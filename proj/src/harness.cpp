#include "knotlattice/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "knotlattice/enumerate.hpp"
#include "knotlattice/gluing.hpp"
#include "knotlattice/integrals.hpp"

namespace knotlattice {

using nlohmann::json;

namespace {

std::string hex_key(ClassKey key) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(key));
  return buf;
}

json fractions(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_fraction_string(x));
  return out;
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Left-aligned columns separated by two spaces.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    std::string out;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      out += line + "\n";
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

json estimate_json(const McEstimate& e) {
  return {{"integral", e.value},
          {"stderr", e.standard_error},
          {"samples", e.samples},
          {"seed", e.seed},
          {"converged", e.converged}};
}

SamplingOptions sampling(const RunConfig& config) {
  SamplingOptions o;
  o.samples = config.samples;
  o.seed = config.seed;
  o.workers = config.workers;
  o.max_standard_error = config.tolerance;
  return o;
}

bool is_integral_command(const std::string& c) { return c == "integrate" || c == "z2"; }

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("KNOTLATTICE_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') return 1;
  return v;
}

void check_config(const RunConfig& c) {
  static const std::vector<std::string> commands = {"enumerate", "basis", "verify", "integrate", "z2"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    throw std::invalid_argument("unknown command '" + c.command + "'");
  const int max_n = is_integral_command(c.command) ? 2 : 3;
  if (c.n < 1 || c.n > max_n)
    throw std::out_of_range("n must lie in 1.." + std::to_string(max_n) + " for " + c.command);
  if (c.k && (*c.k < 0 || *c.k > 2 * c.n))
    throw std::out_of_range("k must lie in 0.." + std::to_string(2 * c.n));
  if (c.command == "enumerate" && !c.k) throw std::invalid_argument("enumerate needs --k");
  if (c.workers < 1) throw std::out_of_range("workers must be positive");
  if (c.samples < static_cast<std::uint64_t>(kStreams))
    throw std::out_of_range("samples must be at least " + std::to_string(kStreams));
  if (!(c.tolerance > 0)) throw std::out_of_range("tol must be positive");
  if (!(c.sigmas > 0)) throw std::out_of_range("sigmas must be positive");
  if (c.format != "json" && c.format != "table") throw std::invalid_argument("format must be json or table");
  if (c.alpha != "paper" && c.alpha != "polyak-viro") throw std::invalid_argument("unknown alpha '" + c.alpha + "'");
  if (c.command == "verify" && c.alpha == "polyak-viro" && (c.n != 2 || c.k.value_or(3) != 3))
    throw std::out_of_range("the polyak-viro map is defined at n = 2, k = 3 only");
  static const std::vector<std::string> diagrams = {"theta", "crossed", "parallel", "tripod", "all"};
  if (std::find(diagrams.begin(), diagrams.end(), c.diagram) == diagrams.end())
    throw std::invalid_argument("unknown diagram class '" + c.diagram + "'");
}

json config_json(const RunConfig& c) {
  json j = {{"command", c.command}, {"format", c.format}, {"workers", c.workers}};
  if (is_integral_command(c.command)) {
    j["curve"] = c.curve;
    if (c.curve == "torus") {
      j["p"] = c.p;
      j["q"] = c.q;
    }
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["tolerance"] = c.tolerance;
    if (c.command == "z2") j["sigmas"] = c.sigmas;
    if (c.command == "integrate") j["diagram"] = c.diagram;
  } else {
    j["n"] = c.n;
    j["k"] = c.k ? json(*c.k) : json(nullptr);
  }
  if (c.command == "verify") {
    j["alpha"] = c.alpha;
    if (c.alpha == "polyak-viro") j["parity"] = to_string(c.parity);
    j["pairing_structure"] = c.pairing_structure;
  }
  if (c.command == "enumerate") j["record_limit"] = c.record_limit;
  return j;
}

CommandOutput run_enumerate(const RunConfig& config) {
  const int n = config.n;
  const int k = *config.k;
  CommandOutput out;
  json& r = out.report;
  r["config"] = config_json(config);

  Table table({"key", "legs", "edges", "|Gamma|", "as_zero", "components", "four_leg", "labellings"});
  json classes = json::array();
  std::uint64_t total = 0;
  const auto cls = labelled_classes(n, k);
  for (const auto& c : cls) {
    const std::uint64_t count = labelling_count(c, k);
    total += count;
    classes.push_back({{"key", hex_key(c.key)},
                       {"legs", c.legs},
                       {"edges", c.representative.visible_edge_count()},
                       {"automorphisms", c.automorphisms},
                       {"as_zero", c.as_zero},
                       {"components", c.components},
                       {"four_leg", c.four_leg},
                       {"labellings", count},
                       {"representative", to_record(c.representative)}});
    table.add({hex_key(c.key), std::to_string(c.legs), std::to_string(c.representative.visible_edge_count()),
               std::to_string(c.automorphisms), c.as_zero ? "yes" : "no", std::to_string(c.components),
               c.four_leg ? "yes" : "no", std::to_string(count)});
  }

  json records = json::array();
  std::string record_text;
  std::uint64_t seen = 0;
  std::uint64_t emitted = 0;
  bool round_trip = true;
  for (const auto& c : cls) {
    for_each_labelling(c, n, k, [&](const LabelledDiagram& d) {
      ++seen;
      if (config.record_limit != 0 && emitted >= config.record_limit) return;
      std::string rec = to_record(d);
      if (!(parse_record(rec) == d)) round_trip = false;
      if (config.format == "json") {
        records.push_back(rec);
      } else {
        if (emitted > 0) record_text += "\n";
        record_text += rec + "\n";
      }
      ++emitted;
    });
  }

  r["n"] = n;
  r["k"] = k;
  r["classes"] = classes;
  r["labelled_diagrams"] = total;
  r["records_emitted"] = emitted;
  r["round_trip"] = round_trip;
  if (config.format == "json") r["records"] = records;
  if (seen != total || !round_trip) out.status = 1;

  out.table = "D_{" + std::to_string(n) + "," + std::to_string(k) + "}: " + std::to_string(cls.size()) +
              " classes, " + std::to_string(total) + " labelled diagrams\n" + table.str();
  if (emitted > 0) out.table += "\n" + record_text;
  return out;
}

CommandOutput run_basis(const RunConfig& config) {
  const int n = config.n;
  const QuotientSpace& space = config.k ? quotient_space_nk(n, *config.k) : quotient_space(n);
  CommandOutput out;
  json& r = out.report;
  r["config"] = config_json(config);
  r["n"] = n;
  r["k"] = config.k ? json(*config.k) : json(nullptr);
  r["dimension"] = space.dimension();
  r["relations"] = space.relation_count();

  json basis = json::array();
  Table btable({"index", "key", "legs", "record"});
  int index = 0;
  for (ClassKey key : space.basis()) {
    const LabelledDiagram rep = representative(key);
    basis.push_back({{"key", hex_key(key)}, {"legs", rep.leg_count()}, {"record", to_record(rep)}});
    std::string flat = to_record(rep);
    std::replace(flat.begin(), flat.end(), '\n', ';');
    btable.add({std::to_string(index++), hex_key(key), std::to_string(rep.leg_count()), flat});
  }
  r["basis"] = basis;

  json classes = json::array();
  Table ctable({"key", "legs", "as_zero", "coordinates"});
  for (const auto& c : enumerate_classes(n)) {
    if (config.k && c.legs < *config.k) continue;
    const RationalVector coords = space.coordinates(c.key);
    classes.push_back({{"key", hex_key(c.key)}, {"legs", c.legs}, {"as_zero", c.as_zero}, {"coordinates", fractions(coords)}});
    std::string text;
    for (std::size_t i = 0; i < coords.size(); ++i) text += (i ? " " : "") + to_fraction_string(coords[i]);
    ctable.add({hex_key(c.key), std::to_string(c.legs), c.as_zero ? "yes" : "no", text});
  }
  r["classes"] = classes;

  out.table = "A_" + std::to_string(n) + (config.k ? "^" + std::to_string(*config.k) : std::string()) +
              ": dimension " + std::to_string(space.dimension()) + ", " + std::to_string(space.relation_count()) +
              " relations\n" + btable.str() + "\n" + ctable.str();
  return out;
}

namespace {

json terms_json(const std::vector<RelationTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back({{"coefficient", t.coefficient}, {"record", to_record(t.diagram)}});
  return out;
}

void verify_one(const RunConfig& config, int k, json& entries, Table& table, int& status) {
  const int n = config.n;
  json e = {{"k", k}};

  if (config.alpha == "paper") {
    const SumIdentityReport s = verify_sum_identity(n, k);
    json mismatches = json::array();
    for (const auto& c : s.classes)
      if (!c.ok)
        mismatches.push_back({{"key", hex_key(c.key)},
                              {"sum", to_fraction_string(c.sum)},
                              {"expected", to_fraction_string(c.expected)}});
    e["sum_identity"] = {{"ok", s.ok()}, {"diagrams", s.diagrams}, {"classes", s.classes.size()}, {"mismatches", mismatches}};
    table.add({std::to_string(k), "sum-identity", std::to_string(s.classes.size()), "-", "-",
               std::to_string(mismatches.size()), s.ok() ? "ok" : "FAIL"});
    if (!s.ok()) status = 1;
  }

  const auto alpha = make_alpha(config.alpha, n, k, config.parity);
  GluingOptions options;
  options.workers = config.workers;
  const GluingReport g = check_gluing(*alpha, n, k, options);
  std::uint64_t checked = 0;
  json conditions = json::array();
  for (const auto& c : g.conditions) {
    checked += c.checked;
    conditions.push_back({{"name", c.name},
                          {"automatic", c.automatic},
                          {"checked", c.checked},
                          {"dropped", c.dropped},
                          {"empty_rhs", c.empty_rhs},
                          {"violations", c.violations}});
    table.add({std::to_string(k), c.name, c.automatic ? "auto" : std::to_string(c.checked), std::to_string(c.dropped),
               std::to_string(c.empty_rhs), std::to_string(c.violations), c.violations == 0 ? "ok" : "FAIL"});
  }
  json violations = json::array();
  for (const auto& v : g.violations)
    violations.push_back({{"condition", v.condition}, {"residual", fractions(v.residual)}, {"terms", terms_json(v.terms)}});
  e["instances_checked"] = checked;
  e["conditions"] = conditions;
  e["violation_count"] = g.violation_count();
  e["violations"] = violations;
  if (!g.ok()) status = 1;

  if (config.pairing_structure) {
    const PairingReport p = check_pairing_structure(n, k);
    e["pairing_structure"] = {{"faces", p.faces}, {"self_paired", p.self_paired}, {"not_involutive", p.not_involutive}, {"ok", p.ok()}};
    table.add({std::to_string(k), "pairing-involution", std::to_string(p.faces), "-", "-",
               std::to_string(p.not_involutive), p.ok() ? "ok" : "FAIL"});
    if (!p.ok()) status = 1;
  }

  if (config.alpha == "paper") {
    const LatticeBasis lb = lattice_generators(n, k);
    const auto* paper = dynamic_cast<const PaperAlpha*>(alpha.get());
    json generators = json::array();
    for (std::size_t i = 0; i < lb.classes.size(); ++i)
      generators.push_back({{"key", hex_key(lb.classes[i])}, {"vector", fractions(lb.generators[i])}});
    json basis = json::array();
    for (const auto& b : lb.lattice.basis()) basis.push_back(fractions(b));
    json membership = json::array();
    for (const auto& c : labelled_classes(n, k)) {
      RationalVector v = paper->class_coordinates(c.key);
      const Rational coefficient = paper_coefficient(n, k, c.legs);
      for (auto& x : v) x *= coefficient;
      const MembershipResult m = lattice_membership(lb, v);
      json coeffs = json::array();
      for (const auto& z : m.coefficients) coeffs.push_back(z.get_str());
      membership.push_back({{"key", hex_key(c.key)},
                            {"four_leg", c.four_leg},
                            {"value", fractions(v)},
                            {"member", m.member},
                            {"in_span", m.in_span},
                            {"coefficients", coeffs}});
    }
    e["lattice"] = {{"rank", lb.lattice.rank()}, {"generators", generators}, {"basis", basis}, {"membership_results", membership}};
  }
  entries.push_back(e);
}

}  // namespace

CommandOutput run_verify(const RunConfig& config) {
  CommandOutput out;
  json& r = out.report;
  r["config"] = config_json(config);
  r["n"] = config.n;
  r["alpha"] = config.alpha;
  json entries = json::array();
  Table table({"k", "condition", "checked", "dropped", "empty_rhs", "violations", "status"});
  std::vector<int> ks;
  if (config.k) {
    ks.push_back(*config.k);
  } else if (config.alpha == "polyak-viro") {
    ks.push_back(3);
  } else {
    for (int k = 0; k <= 2 * config.n; ++k) ks.push_back(k);
  }
  for (int k : ks) verify_one(config, k, entries, table, out.status);
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  for (const auto& e : entries) {
    checked += e["instances_checked"].get<std::uint64_t>();
    violations += e["violation_count"].get<std::uint64_t>();
  }
  r["instances_checked"] = checked;
  r["violation_count"] = violations;
  r["results"] = entries;
  r["ok"] = out.status == 0;
  out.table = "verify n=" + std::to_string(config.n) + " alpha=" + config.alpha +
              (config.alpha == "polyak-viro" ? " parity=" + to_string(config.parity) : std::string()) + "\n" +
              table.str() + (out.status == 0 ? "all checks passed\n" : "FAILED\n");
  return out;
}

CommandOutput run_integrate(const RunConfig& config) {
  const auto curve = make_curve(config.curve, config.p, config.q);
  const SamplingOptions options = sampling(config);
  CommandOutput out;
  json& r = out.report;
  r["config"] = config_json(config);
  r["curve"] = curve->name();
  Table table({"diagram", "integral", "stderr", "samples", "seed", "converged"});
  std::vector<std::pair<std::string, McEstimate>> results;
  if (config.diagram == "theta") {
    results.emplace_back("theta", self_link_integral(*curve, options));
  } else {
    const Degree2Integrals d = degree2_integrals(*curve, options);
    r["rejected"] = d.rejected;
    r["scale"] = d.scale;
    const std::vector<std::pair<std::string, McEstimate>> all = {
        {"theta", d.theta}, {"crossed", d.crossed}, {"parallel", d.parallel}, {"tripod", d.tripod}};
    for (const auto& [name, e] : all)
      if (config.diagram == "all" || config.diagram == name) results.emplace_back(name, e);
  }
  json estimates = json::object();
  for (const auto& [name, e] : results) {
    estimates[name] = estimate_json(e);
    table.add({name, fixed(e.value), fixed(e.standard_error), std::to_string(e.samples), std::to_string(e.seed),
               e.converged ? "yes" : "no"});
    if (!e.converged) out.status = 3;
  }
  if (results.size() == 1) {
    for (auto& [key, value] : estimates.begin()->items()) r[key] = value;
    r["diagram"] = results.front().first;
  } else {
    r["integrals"] = estimates;
  }
  out.table = "curve " + curve->name() + "\n" + table.str();
  return out;
}

CommandOutput run_z2(const RunConfig& config) {
  const auto curve = make_curve(config.curve, config.p, config.q);
  const Z2Report z = z2(*curve, sampling(config), config.sigmas);
  CommandOutput out;
  json& r = out.report;
  r["config"] = config_json(config);
  r["curve"] = curve->name();
  r["integrals"] = {{"theta", estimate_json(z.integrals.theta)},
                    {"crossed", estimate_json(z.integrals.crossed)},
                    {"parallel", estimate_json(z.integrals.parallel)},
                    {"tripod", estimate_json(z.integrals.tripod)}};
  json cov = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(z.integrals.covariance(i, j));
    cov.push_back(row);
  }
  r["covariance"] = cov;
  r["rejected"] = z.integrals.rejected;
  r["scale"] = z.integrals.scale;

  const auto& cls = degree_two_classes();
  r["z2"] = {{"basis", {to_record(representative(cls.parallel)), to_record(representative(cls.crossed))}},
             {"coordinates", {z.coordinates[0], z.coordinates[1]}},
             {"sigma", {z.sigma[0], z.sigma[1]}}};
  r["v2"] = {{"value", z.v2}, {"stderr", z.v2_sigma}, {"nearest", z.v2_nearest},
             {"integral", std::abs(z.v2 - static_cast<double>(z.v2_nearest)) <= std::max(0.05, config.sigmas * z.v2_sigma)}};
  r["closed_form"] = {{"predicted", {z.closed_form[0], z.closed_form[1]}},
                      {"residual", {z.closed_form_residual[0], z.closed_form_residual[1]}},
                      {"sigma", {z.closed_form_sigma[0], z.closed_form_sigma[1]}},
                      {"ok", z.closed_form_ok}};
  r["framing"] = z.framing;
  json lattice = json::array();
  Table ltable({"k", "coordinates", "nearest", "residual", "sigma", "within"});
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fixed(v[i], 5);
    return s;
  };
  for (const auto& l : z.lattice) {
    lattice.push_back({{"k", l.k}, {"coordinates", l.coordinates}, {"sigma", l.sigma}, {"nearest", l.nearest},
                       {"residual", l.residual}, {"within", l.within}});
    ltable.add({std::to_string(l.k), join(l.coordinates), join(l.nearest), join(l.residual), join(l.sigma),
                l.within ? "yes" : "no"});
  }
  r["lattice"] = {{"checks", lattice}, {"ok", z.lattice_ok}};
  r["converged"] = z.converged;
  if (!z.closed_form_ok || !z.lattice_ok) out.status = 1;
  if (!z.converged) out.status = 3;

  Table itable({"integral", "value", "stderr"});
  itable.add({"theta", fixed(z.integrals.theta.value), fixed(z.integrals.theta.standard_error)});
  itable.add({"crossed", fixed(z.integrals.crossed.value), fixed(z.integrals.crossed.standard_error)});
  itable.add({"parallel", fixed(z.integrals.parallel.value), fixed(z.integrals.parallel.standard_error)});
  itable.add({"tripod", fixed(z.integrals.tripod.value), fixed(z.integrals.tripod.standard_error)});
  std::ostringstream t;
  t << "curve " << curve->name() << ", " << config.samples << " samples, seed " << config.seed << "\n"
    << itable.str() << "\n"
    << "Z_2 = " << fixed(z.coordinates[0]) << " [parallel] + " << fixed(z.coordinates[1]) << " [crossed]"
    << "  (sigma " << fixed(z.sigma[0]) << ", " << fixed(z.sigma[1]) << ")\n"
    << "v_2 = " << fixed(z.v2) << " +- " << fixed(z.v2_sigma) << "  nearest " << z.v2_nearest << "\n"
    << "closed form residual " << fixed(z.closed_form_residual[0]) << ", " << fixed(z.closed_form_residual[1])
    << "  (sigma " << fixed(z.closed_form_sigma[0]) << ", " << fixed(z.closed_form_sigma[1]) << ")  "
    << (z.closed_form_ok ? "ok" : "FAIL") << "\n"
    << "framing " << z.framing << "\n"
    << ltable.str() << (z.converged ? "" : "NOT CONVERGED\n");
  out.table = t.str();
  return out;
}

CommandOutput run_command(const RunConfig& config) {
  check_config(config);
  if (config.command == "enumerate") return run_enumerate(config);
  if (config.command == "basis") return run_basis(config);
  if (config.command == "verify") return run_verify(config);
  if (config.command == "integrate") return run_integrate(config);
  return run_z2(config);
}

std::string render(const CommandOutput& output, const std::string& format) {
  if (format == "table") return output.table;
  return output.report.dump(2) + "\n";
}

}  // namespace knotlattice
