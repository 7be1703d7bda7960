// ============================================================================
// helestab — boundary-stability toolkit for nutrient-limited Hele-Shaw
// tumor growth.
//
// Subcommands:
//   eval       evaluate one growth rate or front speed
//   threshold  locate stability thresholds (frequency L or critical radius)
//   sweep      rate grids over (lambda, l[, R]) as CSV, optional plot script
//   simulate   integrate the linearized boundary evolution, export CSVs
//   verify     run the numerical verification suites
//   selftest   shorthand for `verify --suite bessel`
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 numeric failure.
// CSV outputs use LF line ends, '.' decimals, unquoted fields, 17 significant
// digits, and are byte-identical across reruns with the same inputs; every
// CSV written to disk is paired with a <file>.manifest.json run manifest.
// ============================================================================

#include <clocale>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "helestab/bessel.hpp"
#include "helestab/evolve.hpp"
#include "helestab/stability.hpp"
#include "helestab/steady.hpp"
#include "helestab/types.hpp"
#include "helestab/verify.hpp"

namespace {

using nlohmann::json;
using namespace helestab;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

// Flag/usage problems detected after CLI11 parsing; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return std::string(buf);
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    out += argv[i];
  }
  return out;
}

std::string basename_of(const std::string& path) {
  const size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

// ----------------------------------------------------------------------------
// CSV / manifest plumbing
// ----------------------------------------------------------------------------

class CsvBuilder {
 public:
  void row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) body_ += ',';
      body_ += fields[i];
    }
    body_ += '\n';
  }
  const std::string& str() const { return body_; }

 private:
  std::string body_;
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + path);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  f.close();
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const std::string& paired_output,
                    const std::string& command, const json& parameters,
                    const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["parameters"] = parameters;
  m["version"] = kVersion;
  m["timestamp"] = iso8601_utc_now();
  m["outputs"] = outputs;
  write_file(paired_output + ".manifest.json", m.dump(2) + "\n");
}

// Emit a CSV body to --out (file + manifest) or to stdout when no path given.
void emit_csv(const std::string& body, const std::string& out_path,
              const std::string& command, const json& parameters,
              const std::vector<std::string>& outputs) {
  if (out_path.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return;
  }
  write_file(out_path, body);
  write_manifest(out_path, command, parameters, outputs);
}

// ----------------------------------------------------------------------------
// Argument helpers
// ----------------------------------------------------------------------------

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const size_t b = item.find_first_not_of(" \t");
    const size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) {
      throw UsageError(std::string(flag) + ": empty entry in list '" + text +
                       "'");
    }
    item = item.substr(b, e - b + 1);
    try {
      size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item +
                       "' as a number");
    }
  }
  if (out.empty()) {
    throw UsageError(std::string(flag) + ": empty list");
  }
  return out;
}

struct AxisSpec {
  std::string list;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool has_list = false;
  bool has_min = false;
  bool has_max = false;
  bool has_count = false;
};

std::vector<double> build_axis(const AxisSpec& spec, const char* flag) {
  const bool any_range = spec.has_min || spec.has_max || spec.has_count;
  if (spec.has_list && any_range) {
    throw UsageError(std::string(flag) +
                     ": give either -list or -min/-max/-count, not both");
  }
  if (spec.has_list) return parse_list(spec.list, flag);
  if (!any_range) {
    throw UsageError(std::string(flag) + ": missing grid (use " + flag +
                     "-list or " + flag + "-min/-max/-count)");
  }
  if (!(spec.has_min && spec.has_max && spec.has_count)) {
    throw UsageError(std::string(flag) +
                     ": -min, -max and -count must be given together");
  }
  if (spec.count < 1) return {};
  if (spec.count > 1 && !(spec.max >= spec.min)) {
    throw UsageError(std::string(flag) + ": max must be >= min");
  }
  std::vector<double> out;
  out.reserve(static_cast<size_t>(spec.count));
  if (spec.count == 1) {
    out.push_back(spec.min);
    return out;
  }
  for (int i = 0; i < spec.count; ++i) {
    out.push_back(spec.min + (spec.max - spec.min) * i / (spec.count - 1));
  }
  return out;
}

void check_params_cli(const ModelParams& p) {
  try {
    validate(p);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Regime parse_regime(const std::string& s) {
  if (s == "invitro") return Regime::InVitro;
  if (s == "invivo") return Regime::InVivo;
  throw UsageError("--regime must be invitro or invivo, got '" + s + "'");
}

FormulaId parse_formula(const std::string& s) {
  if (s == "f1") return FormulaId::F1;
  if (s == "f2") return FormulaId::F2;
  if (s == "f3") return FormulaId::F3;
  if (s == "f4") return FormulaId::F4;
  throw UsageError("unknown formula '" + s + "'");
}

int require_integer_mode(double l, const char* flag) {
  if (!(l >= 1.0) || l != std::floor(l) ||
      l > static_cast<double>(bessel::kMaxOrder)) {
    throw UsageError(std::string(flag) + ": radial modes must be integers in [1, " +
                     std::to_string(bessel::kMaxOrder) + "], got " + fmt17(l));
  }
  return static_cast<int>(l);
}

void require_radius(double radius, const char* ctx) {
  if (std::isnan(radius)) {
    throw UsageError(std::string("--radius is required for ") + ctx);
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw UsageError("--radius must be a positive finite number");
  }
}

// ----------------------------------------------------------------------------
// eval
// ----------------------------------------------------------------------------

struct EvalArgs {
  std::string formula;
  std::string regime;
  double g0 = 1.0;
  double cb = 1.0;
  double lambda = 1.0;
  double l = 0.0;
  double radius = std::numeric_limits<double>::quiet_NaN();
};

int run_eval(const EvalArgs& a) {
  const ModelParams p{a.g0, a.cb, a.lambda};
  check_params_cli(p);
  double value = 0.0;
  if (a.formula == "speed-tw" || a.formula == "speed-radial") {
    if (a.regime.empty()) {
      throw UsageError("--regime is required for " + a.formula);
    }
    const Regime reg = parse_regime(a.regime);
    if (a.formula == "speed-tw") {
      value = steady::tw_speed(p, reg);
    } else {
      require_radius(a.radius, "speed-radial");
      value = steady::radial_speed(p, reg, a.radius);
    }
  } else {
    const FormulaId fid = parse_formula(a.formula);
    if (!a.regime.empty() && parse_regime(a.regime) != formula_regime(fid)) {
      throw UsageError("--regime " + a.regime + " does not match --formula " +
                       a.formula + " (" +
                       to_string(formula_regime(fid)) + ")");
    }
    if (formula_geometry(fid) == GeometryKind::Radial) {
      require_radius(a.radius, a.formula.c_str());
      require_integer_mode(a.l, "--l");
      value = stability::rate(p, fid, a.l, a.radius);
    } else {
      if (!(a.l >= 0.0)) throw UsageError("--l must be >= 0");
      value = stability::rate(p, fid, a.l);
    }
  }
  std::printf("rate=%.17g classification=%s\n", value,
              to_string(classify_rate(value, p)));
  return kExitOk;
}

// ----------------------------------------------------------------------------
// threshold
// ----------------------------------------------------------------------------

struct ThresholdArgs {
  std::string kind;
  double g0 = 1.0;
  double cb = 1.0;
  std::string lambda_list;
  std::string l_list;
  std::string out;
};

int run_threshold(const ThresholdArgs& a, const std::string& command) {
  const std::vector<double> lambdas = parse_list(a.lambda_list, "--lambda-list");
  CsvBuilder csv;
  csv.row({"lambda", "l", "threshold", "found"});
  json params = {{"kind", a.kind}, {"g0", a.g0},      {"cb", a.cb},
                 {"lambda", lambdas}, {"out", a.out}};
  if (a.kind == "L") {
    if (!a.l_list.empty()) {
      throw UsageError("--l-list is only valid with --kind Rstar");
    }
    for (double lam : lambdas) {
      const ModelParams p{a.g0, a.cb, lam};
      check_params_cli(p);
      const std::optional<double> threshold = stability::threshold_l(p);
      csv.row({fmt17(lam), "", threshold ? fmt17(*threshold) : "",
               threshold ? "yes" : "no"});
    }
  } else {
    if (a.l_list.empty()) {
      throw UsageError("--kind Rstar requires --l-list");
    }
    const std::vector<double> modes = parse_list(a.l_list, "--l-list");
    std::vector<int> int_modes;
    for (double m : modes) {
      const int l = require_integer_mode(m, "--l-list");
      if (l < 2) {
        throw UsageError(
            "--l-list: critical-radius modes must be >= 2 "
            "(mode 1 is translation-neutral at every radius)");
      }
      int_modes.push_back(l);
    }
    params["l"] = int_modes;
    for (double lam : lambdas) {
      const ModelParams p{a.g0, a.cb, lam};
      check_params_cli(p);
      for (int l : int_modes) {
        const std::optional<double> radius = stability::critical_radius(p, l);
        csv.row({fmt17(lam), fmt17(static_cast<double>(l)),
                 radius ? fmt17(*radius) : "", radius ? "yes" : "no"});
      }
    }
  }
  emit_csv(csv.str(), a.out, command, params,
           a.out.empty() ? std::vector<std::string>{}
                         : std::vector<std::string>{a.out});
  return kExitOk;
}

// ----------------------------------------------------------------------------
// sweep
// ----------------------------------------------------------------------------

struct SweepArgs {
  std::string formula;
  double g0 = 1.0;
  double cb = 1.0;
  std::string lambda_list;
  AxisSpec l_axis;
  AxisSpec r_axis;
  std::string out;
  bool emit_plot = false;
};

std::string plot_script_path(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() > suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(),
                       suffix) == 0) {
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".gp";
  }
  return csv_path + ".gp";
}

std::string make_plot_script(const std::string& csv_path, bool radial,
                             const std::string& formula,
                             const std::vector<double>& lambdas,
                             const std::vector<double>& modes) {
  const std::string csv_rel = basename_of(csv_path);
  std::string gp;
  gp += "# Rate sweep plot generated by helestab " + std::string(kVersion) +
        "\n";
  gp += "# Data columns: formula,g0,cb,lambda,l,radius,rate\n";
  gp += "set datafile separator \",\"\n";
  gp += "set key autotitle columnhead\n";
  gp += "set key outside\n";
  gp += "set grid\n";
  gp += std::string("set xlabel \"") + (radial ? "R" : "l") + "\"\n";
  gp += "set ylabel \"growth rate\"\n";
  gp += "set title \"" + formula + " sweep\"\n";
  gp += "plot \\\n";
  std::vector<std::string> elements;
  if (radial) {
    for (double lam : lambdas) {
      for (double mode : modes) {
        elements.push_back(
            "  \"" + csv_rel + "\" using (column(4)==" + fmt17(lam) +
            " && column(5)==" + fmt17(mode) +
            " ? $6 : NaN):7 with linespoints title \"lambda=" + fmt17(lam) +
            " l=" + fmt17(mode) + "\"");
      }
    }
  } else {
    for (double lam : lambdas) {
      elements.push_back("  \"" + csv_rel + "\" using (column(4)==" +
                         fmt17(lam) +
                         " ? $5 : NaN):7 with linespoints title \"lambda=" +
                         fmt17(lam) + "\"");
    }
  }
  for (size_t i = 0; i < elements.size(); ++i) {
    gp += elements[i];
    gp += i + 1 < elements.size() ? ", \\\n" : "\n";
  }
  return gp;
}

int run_sweep(const SweepArgs& a, const std::string& command) {
  const FormulaId fid = parse_formula(a.formula);
  const bool radial = formula_geometry(fid) == GeometryKind::Radial;
  const std::vector<double> lambdas = parse_list(a.lambda_list, "--lambda-list");
  const std::vector<double> modes = build_axis(a.l_axis, "--l");
  std::vector<double> radii;
  if (radial) {
    radii = build_axis(a.r_axis, "--r");
    for (double r : radii) {
      if (!(r > 0.0)) throw UsageError("--r: radii must be > 0");
    }
    for (double m : modes) require_integer_mode(m, "--l");
  } else {
    if (a.r_axis.has_list || a.r_axis.has_min || a.r_axis.has_max ||
        a.r_axis.has_count) {
      throw UsageError(
          "--r grid flags are only valid for radial formulas (f3, f4)");
    }
    for (double m : modes) {
      if (!(m >= 0.0)) throw UsageError("--l: modes must be >= 0");
    }
  }
  if (modes.empty() || (radial && radii.empty())) {
    throw UsageError("sweep: empty grid");
  }
  if (a.emit_plot && a.out.empty()) {
    throw UsageError("--emit-plot requires --out");
  }

  CsvBuilder csv;
  csv.row({"formula", "g0", "cb", "lambda", "l", "radius", "rate"});
  for (double lam : lambdas) {
    const ModelParams p{a.g0, a.cb, lam};
    check_params_cli(p);
    const std::vector<stability::StabilityReport> rows =
        stability::stability_sweep(p, fid, modes, radii);
    for (const stability::StabilityReport& r : rows) {
      csv.row({a.formula, fmt17(r.g0), fmt17(r.cb), fmt17(r.lambda),
               fmt17(r.mode), radial ? fmt17(r.radius) : "", fmt17(r.rate)});
    }
  }

  json params = {{"formula", a.formula}, {"g0", a.g0},  {"cb", a.cb},
                 {"lambda", lambdas},    {"l", modes},  {"radius", radii},
                 {"out", a.out},         {"emit_plot", a.emit_plot}};
  std::vector<std::string> outputs;
  if (!a.out.empty()) outputs.push_back(a.out);
  std::string gp_path;
  if (a.emit_plot) {
    gp_path = plot_script_path(a.out);
    outputs.push_back(gp_path);
  }
  emit_csv(csv.str(), a.out, command, params, outputs);
  if (a.emit_plot) {
    write_file(gp_path,
               make_plot_script(a.out, radial, a.formula, lambdas, modes));
  }
  return kExitOk;
}

// ----------------------------------------------------------------------------
// simulate
// ----------------------------------------------------------------------------

struct SimulateArgs {
  std::string regime = "invivo";
  double g0 = 1.0;
  double cb = 1.0;
  double lambda = 1.0;
  int l = 2;
  double r0 = 1.0;
  double delta0 = 0.0;
  double t_final = 0.0;
  double dt = 0.0;
  bool adaptive = false;
  double adaptive_tol = 1e-8;
  int ntheta = 256;
  std::string curve_times;
  std::string out_trajectory = "trajectory.csv";
  std::string out_curves = "curves.csv";
};

int run_simulate(const SimulateArgs& a, const std::string& command) {
  if (!(a.t_final > 0.0)) {
    throw UsageError("simulate: --t-final must be > 0");
  }
  const ModelParams p{a.g0, a.cb, a.lambda};
  check_params_cli(p);
  require_integer_mode(static_cast<double>(a.l), "--l");
  if (!(a.r0 > 0.0)) throw UsageError("--r0 must be > 0");
  if (a.dt < 0.0) throw UsageError("--dt must be >= 0");
  if (a.ntheta < 8) throw UsageError("--ntheta must be >= 8");
  if (!(a.adaptive_tol > 0.0)) throw UsageError("--adaptive-tol must be > 0");
  if (std::fabs(a.delta0) / a.r0 > 0.1) {
    std::fprintf(stderr,
                 "warning: |delta0|/r0 = %.3g exceeds 0.1; the linearized "
                 "boundary model degrades for large perturbations\n",
                 std::fabs(a.delta0) / a.r0);
  }

  evolve::SimConfig cfg;
  cfg.params = p;
  cfg.regime = parse_regime(a.regime);
  cfg.l = a.l;
  cfg.r0 = a.r0;
  cfg.delta0 = a.delta0;
  cfg.t_final = a.t_final;
  cfg.dt = a.dt;
  cfg.adaptive = a.adaptive;
  cfg.adaptive_tol = a.adaptive_tol;
  const std::vector<evolve::TrajectoryPoint> traj = evolve::simulate(cfg);

  CsvBuilder tcsv;
  tcsv.row({"t", "R", "delta", "rate", "valid"});
  for (const evolve::TrajectoryPoint& pt : traj) {
    tcsv.row({fmt17(pt.t), fmt17(pt.radius), fmt17(pt.delta), fmt17(pt.rate),
              pt.valid ? "1" : "0"});
  }

  std::vector<double> times;
  if (a.curve_times.empty()) {
    times = {0.0, a.t_final};
  } else {
    times = parse_list(a.curve_times, "--curve-times");
  }
  CsvBuilder ccsv;
  ccsv.row({"time", "theta", "x", "y"});
  for (double tc : times) {
    if (tc < 0.0 || tc > a.t_final * (1.0 + 1e-12)) {
      throw UsageError("--curve-times: times must lie in [0, t-final]");
    }
    // Snap to the nearest stored sample (exact for the default fixed grid).
    const evolve::TrajectoryPoint* best = &traj.front();
    for (const evolve::TrajectoryPoint& pt : traj) {
      if (std::fabs(pt.t - tc) < std::fabs(best->t - tc)) best = &pt;
    }
    const evolve::EvolutionState state{best->t, best->radius, best->delta};
    for (const evolve::CurvePoint& cp :
         evolve::boundary_curve(state, a.l, a.ntheta)) {
      ccsv.row({fmt17(best->t), fmt17(cp.theta), fmt17(cp.x), fmt17(cp.y)});
    }
  }

  const json params = {{"regime", a.regime},
                       {"g0", a.g0},
                       {"cb", a.cb},
                       {"lambda", a.lambda},
                       {"l", a.l},
                       {"r0", a.r0},
                       {"delta0", a.delta0},
                       {"t_final", a.t_final},
                       {"dt", a.dt},
                       {"adaptive", a.adaptive},
                       {"adaptive_tol", a.adaptive_tol},
                       {"ntheta", a.ntheta},
                       {"curve_times", times},
                       {"out_trajectory", a.out_trajectory},
                       {"out_curves", a.out_curves}};
  const std::vector<std::string> outputs{a.out_trajectory, a.out_curves};
  write_file(a.out_trajectory, tcsv.str());
  write_manifest(a.out_trajectory, command, params, outputs);
  write_file(a.out_curves, ccsv.str());
  write_manifest(a.out_curves, command, params, outputs);
  std::printf("wrote %s (%zu samples) and %s (%zu curve times)\n",
              a.out_trajectory.c_str(), traj.size(), a.out_curves.c_str(),
              times.size());
  return kExitOk;
}

// ----------------------------------------------------------------------------
// verify / selftest
// ----------------------------------------------------------------------------

int run_verify(const std::string& suite, double tolerance) {
  if (tolerance < 0.0) throw UsageError("--tolerance must be >= 0");
  const std::vector<verify::SuiteResult> results =
      verify::run_suites(suite, tolerance);
  bool all = true;
  int n_checks = 0;
  for (const verify::SuiteResult& s : results) {
    for (const verify::CheckResult& c : s.checks) {
      std::printf("%s %s/%s measured=%.3e limit=%.3e\n",
                  c.passed ? "PASS" : "FAIL", s.suite.c_str(), c.name.c_str(),
                  c.measured, c.limit);
      all = all && c.passed;
      ++n_checks;
    }
  }
  std::printf("%s (%d checks)\n", all ? "all checks passed" : "FAILURES found",
              n_checks);
  return all ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{
      "Boundary-stability toolkit for nutrient-limited Hele-Shaw tumor "
      "growth"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  EvalArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate one growth rate or front speed");
  eval_cmd
      ->add_option("--formula", eval_args.formula,
                   "One of f1, f2, f3, f4, speed-tw, speed-radial")
      ->required()
      ->check(CLI::IsMember(
          {"f1", "f2", "f3", "f4", "speed-tw", "speed-radial"}));
  eval_cmd
      ->add_option("--regime", eval_args.regime,
                   "invitro or invivo (must match the formula; required for "
                   "speeds)")
      ->check(CLI::IsMember({"invitro", "invivo"}));
  eval_cmd->add_option("--g0", eval_args.g0, "Pressure growth coefficient");
  eval_cmd->add_option("--cb", eval_args.cb, "Background nutrient level");
  eval_cmd->add_option("--lambda", eval_args.lambda,
                       "Nutrient consumption rate");
  eval_cmd->add_option("--l", eval_args.l,
                       "Perturbation frequency (integer for f3/f4)");
  eval_cmd->add_option("--radius", eval_args.radius,
                       "Tumor radius (f3, f4, speed-radial)");

  ThresholdArgs thr_args;
  CLI::App* thr_cmd = app.add_subcommand(
      "threshold", "Locate stability thresholds as CSV");
  thr_cmd
      ->add_option("--kind", thr_args.kind,
                   "L (frequency threshold) or Rstar (critical radius)")
      ->required()
      ->check(CLI::IsMember({"L", "Rstar"}));
  thr_cmd->add_option("--g0", thr_args.g0, "Pressure growth coefficient");
  thr_cmd->add_option("--cb", thr_args.cb, "Background nutrient level");
  thr_cmd
      ->add_option("--lambda-list", thr_args.lambda_list,
                   "Comma-separated consumption rates")
      ->required();
  thr_cmd->add_option("--l-list", thr_args.l_list,
                      "Comma-separated integer modes (Rstar only)");
  thr_cmd->add_option("--out", thr_args.out,
                      "CSV output path (stdout if omitted)");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Rate grid over (lambda, l[, R]) as CSV");
  sweep_cmd
      ->add_option("--formula", sweep_args.formula, "One of f1, f2, f3, f4")
      ->required()
      ->check(CLI::IsMember({"f1", "f2", "f3", "f4"}));
  sweep_cmd->add_option("--g0", sweep_args.g0, "Pressure growth coefficient");
  sweep_cmd->add_option("--cb", sweep_args.cb, "Background nutrient level");
  sweep_cmd
      ->add_option("--lambda-list", sweep_args.lambda_list,
                   "Comma-separated consumption rates")
      ->required();
  CLI::Option* l_list_opt = sweep_cmd->add_option(
      "--l-list", sweep_args.l_axis.list, "Comma-separated frequencies");
  CLI::Option* l_min_opt =
      sweep_cmd->add_option("--l-min", sweep_args.l_axis.min, "Grid start");
  CLI::Option* l_max_opt =
      sweep_cmd->add_option("--l-max", sweep_args.l_axis.max, "Grid end");
  CLI::Option* l_count_opt = sweep_cmd->add_option(
      "--l-count", sweep_args.l_axis.count, "Grid point count");
  CLI::Option* r_list_opt = sweep_cmd->add_option(
      "--r-list", sweep_args.r_axis.list, "Comma-separated radii (f3/f4)");
  CLI::Option* r_min_opt =
      sweep_cmd->add_option("--r-min", sweep_args.r_axis.min, "Radius start");
  CLI::Option* r_max_opt =
      sweep_cmd->add_option("--r-max", sweep_args.r_axis.max, "Radius end");
  CLI::Option* r_count_opt = sweep_cmd->add_option(
      "--r-count", sweep_args.r_axis.count, "Radius point count");
  sweep_cmd->add_option("--out", sweep_args.out,
                        "CSV output path (stdout if omitted)");
  sweep_cmd->add_flag("--emit-plot", sweep_args.emit_plot,
                      "Also write a gnuplot script next to the CSV");

  SimulateArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Integrate the linearized boundary evolution");
  sim_cmd
      ->add_option("--regime", sim_args.regime, "invitro or invivo")
      ->check(CLI::IsMember({"invitro", "invivo"}));
  sim_cmd->add_option("--g0", sim_args.g0, "Pressure growth coefficient");
  sim_cmd->add_option("--cb", sim_args.cb, "Background nutrient level");
  sim_cmd->add_option("--lambda", sim_args.lambda,
                      "Nutrient consumption rate");
  sim_cmd->add_option("--l", sim_args.l, "Integer perturbation mode");
  sim_cmd->add_option("--r0", sim_args.r0, "Initial radius");
  sim_cmd->add_option("--delta0", sim_args.delta0,
                      "Initial perturbation amplitude");
  sim_cmd->add_option("--t-final", sim_args.t_final, "Horizon T")->required();
  sim_cmd->add_option("--dt", sim_args.dt,
                      "Fixed step (0 selects T/2000)");
  sim_cmd->add_flag("--adaptive", sim_args.adaptive,
                    "Step-doubling adaptive stepping");
  sim_cmd->add_option("--adaptive-tol", sim_args.adaptive_tol,
                      "Adaptive error tolerance");
  sim_cmd->add_option("--ntheta", sim_args.ntheta,
                      "Boundary curve resolution (>= 8)");
  sim_cmd->add_option("--curve-times", sim_args.curve_times,
                      "Comma-separated export times (default 0,T)");
  sim_cmd->add_option("--out-trajectory", sim_args.out_trajectory,
                      "Trajectory CSV path");
  sim_cmd->add_option("--out-curves", sim_args.out_curves,
                      "Boundary curve CSV path");

  std::string verify_suite = "all";
  double verify_tolerance = 0.0;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the numerical verification suites");
  verify_cmd
      ->add_option("--suite", verify_suite,
                   "bessel, oracle, asymptotes, or all")
      ->check(CLI::IsMember({"bessel", "oracle", "asymptotes", "all"}));
  verify_cmd->add_option("--tolerance", verify_tolerance,
                         "Override every per-check limit (0 keeps defaults)");

  CLI::App* selftest_cmd = app.add_subcommand(
      "selftest", "Run the Bessel identity suite (verify --suite bessel)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  sweep_args.l_axis.has_list = l_list_opt->count() > 0;
  sweep_args.l_axis.has_min = l_min_opt->count() > 0;
  sweep_args.l_axis.has_max = l_max_opt->count() > 0;
  sweep_args.l_axis.has_count = l_count_opt->count() > 0;
  sweep_args.r_axis.has_list = r_list_opt->count() > 0;
  sweep_args.r_axis.has_min = r_min_opt->count() > 0;
  sweep_args.r_axis.has_max = r_max_opt->count() > 0;
  sweep_args.r_axis.has_count = r_count_opt->count() > 0;

  const std::string command = join_args(argc, argv);
  try {
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (thr_cmd->parsed()) return run_threshold(thr_args, command);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args, command);
    if (sim_cmd->parsed()) return run_simulate(sim_args, command);
    if (verify_cmd->parsed()) return run_verify(verify_suite, verify_tolerance);
    if (selftest_cmd->parsed()) return run_verify("bessel", 0.0);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
