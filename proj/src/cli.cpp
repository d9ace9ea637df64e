#include "tunnelkit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <locale>
#include <numbers>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tunnelkit/errors.hpp"
#include "tunnelkit/phase_time.hpp"
#include "tunnelkit/resonance.hpp"
#include "tunnelkit/scatter_oracle.hpp"
#include "tunnelkit/scenarios.hpp"
#include "tunnelkit/transmission.hpp"

namespace tunnelkit::cli {

namespace {

using nlohmann::json;

/// Bad user input; maps to kExitParse.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flag value if given, else the config file's, else the fallback.
template <class T>
T pick(const std::optional<T>& flag, const json& section, const std::string& section_name,
       const std::string& key, T fallback) {
  if (flag) return *flag;
  if (!section.is_object() || !section.contains(key)) return fallback;
  try {
    return section.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config field '" + section_name + "." + key + "' has the wrong type");
  }
}

struct SystemFlags {
  std::optional<double> a, L, U0, mass_ratio;
};

struct Common {
  std::string config_path;
  json config = json::object();
  SystemFlags system;
  PhysicalConstants constants;

  const json& section(const std::string& name) const {
    static const json empty = json::object();
    auto it = config.find(name);
    return it == config.end() ? empty : *it;
  }

  void load() {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config file '" + config_path + "' is not valid JSON: " + e.what());
    }
    if (!config.is_object()) throw ConfigError("config file must hold a JSON object");
    if (config.contains("system") && !config["system"].is_object()) {
      throw ConfigError("config field 'system' must be an object");
    }
  }

  BarrierSystem barrier_system() const {
    const json& s = section("system");
    const double a = pick(system.a, s, "system", "a", 300.0);
    const double L = pick(system.L, s, "system", "L", 195.0);
    const double U0 = pick(system.U0, s, "system", "U0", 230.0);
    const double ratio = pick(system.mass_ratio, s, "system", "mass_ratio", 1.0);
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ConfigError("field 'a' must be a positive length (Å)");
    }
    if (!(L >= 0.0) || !std::isfinite(L)) throw ConfigError("field 'L' must be a length >= 0 (Å)");
    if (!(U0 > 0.0) || !std::isfinite(U0)) {
      throw ConfigError("field 'U0' must be a positive energy (neV)");
    }
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
      throw ConfigError("field 'mass_ratio' must be > 0");
    }
    return BarrierSystem{constants.from_angstrom(a), constants.from_neV(U0),
                         constants.from_angstrom(L), ratio * constants.m_neutron, constants.hbar};
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--a", c.system.a, "barrier width (Å)");
  cmd->add_option("--L", c.system.L, "gap between barriers (Å)");
  cmd->add_option("--U0", c.system.U0, "barrier height (neV)");
  cmd->add_option("--mass-ratio", c.system.mass_ratio, "particle mass / neutron mass");
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw ConfigError("field 'points' must be >= 1");
  if (points == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  return g;
}

std::string csv_number(double x) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(12) << x;
  return s.str();
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw ConfigError("field 'format' must be csv or json");
}

// ---- transmission ---------------------------------------------------------

struct TransmissionArgs {
  Common common;
  std::optional<double> E_min, E_max;
  std::optional<int> points;
  std::optional<std::string> format;
};

int cmd_transmission(TransmissionArgs& args, std::ostream& out) {
  args.common.load();
  const BarrierSystem sys = args.common.barrier_system();
  const json& sec = args.common.section("transmission");
  const auto& c = args.common.constants;
  const double lo = pick(args.E_min, sec, "transmission", "E_min", 1.0);
  const double hi = pick(args.E_max, sec, "transmission", "E_max", c.to_neV(sys.U0) - 1.0);
  const int points = pick(args.points, sec, "transmission", "points", 201);
  const std::string format = pick(args.format, sec, "transmission", "format", std::string("csv"));
  check_format(format);

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream csv;
  csv << "E_neV,probability,tau_s\n";
  for (double e_neV : linear_grid(lo, hi, points)) {
    const double E = c.from_neV(e_neV);
    const double p = probability(sys, E);
    const double tau = phase_time(sys, E).total;
    rows.push_back({{"E_neV", e_neV}, {"probability", p}, {"tau_s", tau}});
    csv << csv_number(e_neV) << ',' << csv_number(p) << ',' << csv_number(tau) << '\n';
  }
  if (format == "json") {
    out << rows.dump(2) << '\n';
  } else {
    out << csv.str();
  }
  return kExitOk;
}

// ---- resonances -----------------------------------------------------------

struct ResonanceArgs {
  Common common;
  std::optional<double> E_min, E_max, fit_mass, mass_lo, mass_hi;
  std::optional<int> grid_cells;
};

std::size_t grid_cells_from_env(std::size_t fallback) {
  const char* env = std::getenv("TUNNELKIT_GRID_CELLS");
  if (env == nullptr || *env == '\0') return fallback;
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::char_traits<char>::length(env) || n < 1) {
    throw ConfigError("environment variable TUNNELKIT_GRID_CELLS must be a positive integer");
  }
  return static_cast<std::size_t>(n);
}

int cmd_resonances(ResonanceArgs& args, std::ostream& out) {
  args.common.load();
  BarrierSystem sys = args.common.barrier_system();
  const json& sec = args.common.section("resonances");
  const auto& c = args.common.constants;
  const double lo = pick(args.E_min, sec, "resonances", "E_min", 1.0);
  const double hi = pick(args.E_max, sec, "resonances", "E_max", c.to_neV(sys.U0) - 1.0);

  ResonanceSearchOptions opts;
  opts.grid_cells = grid_cells_from_env(opts.grid_cells);
  const int cells = pick(args.grid_cells, sec, "resonances", "grid_cells",
                         static_cast<int>(opts.grid_cells));
  if (cells < 1) throw ConfigError("field 'grid_cells' must be >= 1");
  opts.grid_cells = static_cast<std::size_t>(cells);

  std::optional<double> fitted_ratio;
  std::optional<double> target = args.fit_mass;
  if (!target && sec.contains("fit_mass")) {
    target = pick<double>(std::nullopt, sec, "resonances", "fit_mass", 0.0);
  }
  if (target) {
    const double r_lo = pick(args.mass_lo, sec, "resonances", "mass_lo", 0.8);
    const double r_hi = pick(args.mass_hi, sec, "resonances", "mass_hi", 1.2);
    const double m = fit_effective_mass(sys.a, sys.U0, sys.L, c.from_neV(*target),
                                        r_lo * c.m_neutron, r_hi * c.m_neutron, sys.hbar);
    fitted_ratio = m / c.m_neutron;
    sys = sys.with_mass(m);
  }

  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const Resonance& r : find_resonances(sys, c.from_neV(lo), c.from_neV(hi), opts)) {
    list.push_back({{"E_r_neV", c.to_neV(r.E_r)},
                    {"beta_neV", c.to_neV(r.beta)},
                    {"tau_r_s", phase_time_at_resonance(sys, r)}});
  }
  if (fitted_ratio) {
    const nlohmann::ordered_json doc = {{"fitted_mass_ratio", *fitted_ratio}, {"resonances", list}};
    out << doc.dump(2) << '\n';
  } else {
    out << list.dump(2) << '\n';
  }
  return kExitOk;
}

// ---- neutron ----------------------------------------------------------------

struct NeutronArgs {
  std::string constants_path;
  bool check = false;
  bool annotate = false;
};

struct Tolerance {
  const char* field;
  double value;
  double target;
  double tol;
  bool relative;
};

int cmd_neutron(const NeutronArgs& args, std::ostream& out, std::ostream& err) {
  PhysicalConstants constants;
  if (!args.constants_path.empty()) {
    std::ifstream in(args.constants_path);
    if (!in) throw ConfigError("cannot open constants file '" + args.constants_path + "'");
    try {
      constants = constants_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError("constants file '" + args.constants_path + "' is malformed: " + e.what());
    } catch (const DomainError& e) {
      throw ConfigError(std::string("constants file: ") + e.what());
    }
  }
  const NeutronReport report = run_neutron_scenario(constants);
  out << to_json(report, args.annotate).dump(2) << '\n';
  if (!args.check) return kExitOk;

  const Tolerance checks[] = {
      {"E_r_free_mass", report.E_r_free_mass, 123.0, 1.0, false},
      {"fitted_mass_ratio", report.fitted_mass_ratio, 0.926883, 1e-4, false},
      {"tau_r", report.tau_r, 2.36e-7, 0.02, true},
      {"tau_avg", report.tau_avg, 2.4e-7, 0.05, true},
  };
  int failures = 0;
  for (const auto& t : checks) {
    const double dev = std::abs(t.value - t.target) / (t.relative ? std::abs(t.target) : 1.0);
    if (dev > t.tol) {
      ++failures;
      err << "check failed: " << t.field << " = " << std::setprecision(10) << t.value
          << ", expected " << t.target << (t.relative ? " (relative " : " (absolute ") << t.tol
          << ")\n";
    }
  }
  return failures == 0 ? kExitOk : kExitAcceptance;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  Common common;
  std::optional<std::string> axis, format;
  std::optional<double> energy, from, to;
  std::optional<int> steps;
  std::vector<double> values;
};

int cmd_sweep(SweepArgs& args, std::ostream& out) {
  args.common.load();
  const BarrierSystem sys = args.common.barrier_system();
  const json& sec = args.common.section("sweep");
  const auto& c = args.common.constants;

  SweepAxis axis;
  try {
    axis = parse_sweep_axis(pick(args.axis, sec, "sweep", "axis", std::string("barrier_width")));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("field 'axis': ") + e.what());
  }
  const double e_neV = pick(args.energy, sec, "sweep", "energy", 20.0);
  const std::string format = pick(args.format, sec, "sweep", "format", std::string("csv"));
  check_format(format);

  std::vector<double> values = args.values;
  if (values.empty() && sec.contains("values")) {
    try {
      values = sec.at("values").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ConfigError("config field 'sweep.values' must be an array of numbers");
    }
  }
  if (values.empty()) {
    const double default_from = axis == SweepAxis::barrier_width ? 100.0 : 50.0;
    const double default_to = axis == SweepAxis::barrier_width ? 1000.0 : 500.0;
    const int steps = pick(args.steps, sec, "sweep", "steps", 19);
    values = linear_grid(pick(args.from, sec, "sweep", "from", default_from),
                         pick(args.to, sec, "sweep", "to", default_to), steps);
  }
  std::vector<double> metres;
  for (double v : values) metres.push_back(c.from_angstrom(v));

  const SweepTable table = hartman_sweep(sys, c.from_neV(e_neV), axis, metres);
  if (format == "json") {
    out << to_json(table, c).dump(2) << '\n';
    return kExitOk;
  }
  out << "sweep_value_angstrom,qa,probability,tau_exact_s,tau_asymptotic_s,flagged\n";
  for (const SweepRow& r : table.rows) {
    out << csv_number(c.to_angstrom(r.sweep_value)) << ',' << csv_number(r.qa) << ','
        << csv_number(r.probability) << ',' << csv_number(r.tau_exact) << ','
        << (r.flagged ? std::string("nan") : csv_number(r.tau_asymptotic)) << ','
        << (r.flagged ? 1 : 0) << '\n';
  }
  return kExitOk;
}

// ---- oracle-check -------------------------------------------------------------

struct OracleArgs {
  Common common;
  std::optional<double> E_min, E_max, amp_tol, tau_tol, rel_step;
  std::optional<int> points;
};

int cmd_oracle_check(OracleArgs& args, std::ostream& out, std::ostream& err) {
  args.common.load();
  const BarrierSystem sys = args.common.barrier_system();
  const json& sec = args.common.section("oracle-check");
  const auto& c = args.common.constants;
  const double U0_neV = c.to_neV(sys.U0);
  const double lo = pick(args.E_min, sec, "oracle-check", "E_min", 0.05 * U0_neV);
  const double hi = pick(args.E_max, sec, "oracle-check", "E_max", 0.95 * U0_neV);
  const int points = pick(args.points, sec, "oracle-check", "points", 200);
  const double amp_tol = pick(args.amp_tol, sec, "oracle-check", "amp_tol", 1e-10);
  const double tau_tol = pick(args.tau_tol, sec, "oracle-check", "tau_tol", 1e-6);
  const double rel_step = pick(args.rel_step, sec, "oracle-check", "rel_step", 1e-6);

  const oracle::PotentialProfile profile = oracle::double_barrier_profile(sys);
  double worst_amp = 0.0, worst_amp_E = lo, worst_phase = 0.0;
  double worst_tau = 0.0, worst_tau_E = lo;
  for (double e_neV : linear_grid(lo, hi, points)) {
    const double E = c.from_neV(e_neV);
    const TransmissionResult closed = amplitude(sys, E);
    const oracle::ScatterSolution tm = oracle::solve(profile, E);
    const double dlog = 0.5 * (std::log(closed.probability) - tm.log_transmission);
    const double dphase = std::remainder(closed.phase - tm.t_phase, 2.0 * std::numbers::pi);
    const double amp_dev = std::abs(std::exp(std::complex<double>(dlog, dphase)) - 1.0);
    if (amp_dev >= worst_amp) {
      worst_amp = amp_dev;
      worst_amp_E = e_neV;
    }
    worst_phase = std::max(worst_phase, std::abs(dphase));

    const double analytic = phase_time(sys, E).total;
    const double numeric = phase_time_numeric(sys, E, rel_step);
    const double tau_dev = std::abs(analytic - numeric) / std::abs(analytic);
    if (tau_dev >= worst_tau) {
      worst_tau = tau_dev;
      worst_tau_E = e_neV;
    }
  }
  out << std::setprecision(6) << "points " << points << '\n'
      << "max_amplitude_rel_deviation " << worst_amp << " at E_neV " << worst_amp_E << '\n'
      << "max_phase_deviation_rad " << worst_phase << '\n'
      << "max_tau_rel_deviation " << worst_tau << " at E_neV " << worst_tau_E << '\n';
  bool ok = true;
  if (!(worst_amp <= amp_tol)) {
    ok = false;
    err << "amplitude deviation " << worst_amp << " exceeds " << amp_tol << " at E = "
        << worst_amp_E << " neV\n";
  }
  if (!(worst_tau <= tau_tol)) {
    ok = false;
    err << "phase-time deviation " << worst_tau << " exceeds " << tau_tol << " at E = "
        << worst_tau_E << " neV\n";
  }
  return ok ? kExitOk : kExitOracle;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tunneling through two equal rectangular barriers", "tunnelkit"};
  app.require_subcommand(1);

  TransmissionArgs tx;
  auto* t = app.add_subcommand("transmission",
                               "tabulate |A_T|^2 and phase-time over an energy grid");
  add_common(t, tx.common);
  t->add_option("--E-min", tx.E_min, "lowest energy (neV)");
  t->add_option("--E-max", tx.E_max, "highest energy (neV)");
  t->add_option("--points", tx.points, "grid points");
  t->add_option("--format", tx.format, "csv | json");

  ResonanceArgs rs;
  auto* r = app.add_subcommand("resonances", "list resonances with width and phase-time");
  add_common(r, rs.common);
  r->add_option("--E-min", rs.E_min, "window start (neV)");
  r->add_option("--E-max", rs.E_max, "window end (neV)");
  r->add_option("--fit-mass", rs.fit_mass, "fit the mass so a resonance sits at this energy (neV)");
  r->add_option("--mass-lo", rs.mass_lo, "mass bracket start (ratio to m0)");
  r->add_option("--mass-hi", rs.mass_hi, "mass bracket end (ratio to m0)");
  r->add_option("--grid-cells", rs.grid_cells,
                "scan cells (default 2000 or $TUNNELKIT_GRID_CELLS)");

  NeutronArgs nt;
  auto* n = app.add_subcommand("neutron", "reproduce the neutron-filter numbers");
  n->add_option("--constants", nt.constants_path, "JSON file overriding physical constants");
  n->add_flag("--check", nt.check, "exit 4 if a reference value is missed");
  n->add_flag("--annotate", nt.annotate, "include measured values and window extrema");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "vary barrier width or gap at fixed energy");
  add_common(s, sw.common);
  s->add_option("--axis", sw.axis, "barrier_width | gap_length");
  s->add_option("--energy", sw.energy, "energy (neV)");
  s->add_option("--values", sw.values, "swept lengths (Å)");
  s->add_option("--from", sw.from, "first swept length (Å)");
  s->add_option("--to", sw.to, "last swept length (Å)");
  s->add_option("--steps", sw.steps, "number of swept lengths");
  s->add_option("--format", sw.format, "csv | json");

  OracleArgs oc;
  auto* o = app.add_subcommand(
      "oracle-check", "closed form vs transfer matrix, analytic vs numeric phase-time");
  add_common(o, oc.common);
  o->add_option("--E-min", oc.E_min, "lowest energy (neV)");
  o->add_option("--E-max", oc.E_max, "highest energy (neV)");
  o->add_option("--points", oc.points, "grid points");
  o->add_option("--amp-tol", oc.amp_tol, "amplitude tolerance (relative)");
  o->add_option("--tau-tol", oc.tau_tol, "phase-time tolerance (relative)");
  o->add_option("--rel-step", oc.rel_step, "relative finite-difference step");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (t->parsed()) return cmd_transmission(tx, out);
    if (r->parsed()) return cmd_resonances(rs, out);
    if (n->parsed()) return cmd_neutron(nt, out, err);
    if (s->parsed()) return cmd_sweep(sw, out);
    if (o->parsed()) return cmd_oracle_check(oc, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitParse;
}

}  // namespace tunnelkit::cli
