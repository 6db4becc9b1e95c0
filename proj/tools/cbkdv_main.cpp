// Command-line front end: constructs traveling-wave solutions of the
// compound Burgers-KdV equation, verifies them (ODE residual, algebraic
// system, amplitude balance), integrates the PDE, and runs velocity sweeps.

#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbkdv/analysis.hpp"
#include "cbkdv/ansatz_system.hpp"
#include "cbkdv/dynamics.hpp"
#include "cbkdv/io.hpp"
#include "cbkdv/solution.hpp"

using json = nlohmann::ordered_json;
using namespace cbkdv;

namespace {

json complex_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

struct CliOptions {
  // Physical parameters and branch; NaN / 0 mean "not set on the command line".
  double alpha = NAN, beta = NAN, mu = NAN, s = NAN;
  int eps1 = 0, eps2 = 0, eps3 = 0, eps = 0;
  double x0 = NAN;

  std::string grid;  // "lo:hi"
  double dx = NAN;
  double dt = NAN;
  double t_end = NAN;
  double safety = NAN;
  int record_every = 0;

  std::string varying;
  double lo = NAN, hi = NAN;
  int count = 0;

  std::string times = "0";
  std::string config_path;
  std::string out = "-";
  std::string metrics_out;
  std::string format;  // empty = the command's natural format
  bool stamp = false;
};

// Values resolved from config file plus command-line overrides.
struct Resolved {
  json config;

  double number(const std::string& key, double cli_value, std::optional<double> fallback = {}) {
    if (!std::isnan(cli_value)) return cli_value;
    if (config.contains(key) && config[key].is_number()) return config[key].get<double>();
    if (config.contains("params") && config["params"].contains(key)) {
      return config["params"][key].get<double>();
    }
    if (fallback) return *fallback;
    throw InvalidParameters("missing required value '" + key + "'");
  }

  int sign(const std::string& key, int cli_value, int fallback) {
    if (cli_value != 0) return cli_value;
    if (config.contains(key) && config[key].is_number_integer()) return config[key].get<int>();
    if (config.contains("signs") && config["signs"].contains(key)) {
      return config["signs"][key].get<int>();
    }
    return fallback;
  }
};

Resolved resolve(const CliOptions& opt) {
  Resolved r;
  r.config = json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw IoError("cannot read config '" + opt.config_path + "'");
    try {
      in >> r.config;
    } catch (const json::exception& e) {
      throw InvalidParameters("config is not valid JSON: " + std::string(e.what()));
    }
  }
  return r;
}

PhysicalParameters resolve_params(Resolved& r, const CliOptions& opt) {
  return PhysicalParameters(r.number("alpha", opt.alpha), r.number("beta", opt.beta),
                            r.number("mu", opt.mu), r.number("s", opt.s));
}

SignTriple resolve_signs(Resolved& r, const CliOptions& opt) {
  // Defaults are the reference branch (eps1, eps2, eps3) = (1, -1, -1), eps = 1.
  return SignTriple(r.sign("eps1", opt.eps1, 1), r.sign("eps2", opt.eps2, -1),
                    r.sign("eps3", opt.eps3, -1), r.sign("eps", opt.eps, 1));
}

GridSpec resolve_grid(Resolved& r, const CliOptions& opt) {
  std::string spec = opt.grid;
  if (spec.empty() && r.config.contains("grid") && r.config["grid"].is_string()) {
    spec = r.config["grid"].get<std::string>();
  }
  if (spec.empty()) throw InvalidParameters("missing --grid lo:hi");
  double lo = 0.0, hi = 0.0;
  if (std::sscanf(spec.c_str(), "%lf:%lf", &lo, &hi) != 2) {
    throw InvalidParameters("--grid expects lo:hi, got '" + spec + "'");
  }
  const double dx = r.number("dx", opt.dx);
  if (!(dx > 0.0)) throw InvalidParameters("dx must be positive");
  const int n = static_cast<int>(std::lround((hi - lo) / dx)) + 1;
  return GridSpec(lo, hi, n);
}

void require_format(const CliOptions& opt, const std::string& supported) {
  if (opt.format.empty()) return;  // use the command's natural format
  if (opt.format != "json" && opt.format != "csv") {
    throw InvalidParameters("--format must be json or csv");
  }
  if (opt.format != supported && supported != "any") {
    throw InvalidParameters("this command only supports --format " + supported);
  }
}

void write_text(const std::string& out, const std::string& text) {
  if (out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(out);
  if (!os) throw IoError("cannot open '" + out + "' for writing");
  os << text;
  if (!os) throw IoError("write to '" + out + "' failed");
}

json params_json(const PhysicalParameters& p) {
  return json{{"alpha", p.alpha}, {"beta", p.beta}, {"mu", p.mu}, {"s", p.s}};
}

json signs_json(const SignTriple& s) {
  return json{{"eps1", s.eps1}, {"eps2", s.eps2}, {"eps3", s.eps3}, {"eps", s.eps}};
}

json header_json(const PhysicalParameters& p, const SignTriple& s, double x0, bool stamp) {
  json out;
  out["schema"] = 1;
  out["params"] = params_json(p);
  out["signs"] = signs_json(s);
  out["x0"] = x0;
  if (stamp) {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out["stamp"] = buf;
  }
  return out;
}

std::vector<double> parse_times(const std::string& times) {
  std::vector<double> out;
  std::stringstream ss(times);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stod(token));
  }
  if (out.empty()) throw InvalidParameters("--times needs at least one value");
  return out;
}

// ---------------------------------------------------------------------------

int cmd_solve(const CliOptions& opt) {
  require_format(opt, "json");
  Resolved r = resolve(opt);
  const PhysicalParameters params = resolve_params(r, opt);
  const SignTriple signs = resolve_signs(r, opt);
  const double x0 = r.number("x0", opt.x0, 0.0);

  const WaveCoefficients c = solve_coefficients(params, signs);
  json out = header_json(params, signs, x0, opt.stamp);
  out["coefficients"] = json{{"kappa", c.kappa}, {"B0", c.B0},         {"B1", c.B1},
                             {"C1", c.C1},       {"D1", complex_json(c.D1)}, {"v", c.v}};
  write_text(opt.out, out.dump(2) + "\n");
  return 0;
}

int cmd_verify(const CliOptions& opt) {
  require_format(opt, "json");
  Resolved r = resolve(opt);
  const PhysicalParameters params = resolve_params(r, opt);
  const SignTriple signs = resolve_signs(r, opt);
  const double x0 = r.number("x0", opt.x0, 0.0);

  const TravelingWaveSolution sol = make_solution(params, signs, x0);

  const double max_residual = max_relative_residual(sol, -20.0, 20.0, 201);
  const SystemValues sys = extract_system(to_candidate(sol.coeffs), params);
  const AmplitudeBalance ab = amplitude_balance(sol.coeffs);
  const bool velocity_consistent = velocity(VelocityQuery(params, signs.eps3)) == sol.coeffs.v;

  const bool ode_pass = max_residual < 1e-10;
  const bool system_pass = sys.max_relative() < 1e-10;
  const bool amplitude_pass = ab.balanced && std::abs(ab.quotient + 1.0) < 1e-12;

  json out = header_json(params, signs, x0, opt.stamp);
  out["checks"] = json{{"max_ode_residual_rel", max_residual},
                       {"ode_pass", ode_pass},
                       {"max_system_rel", sys.max_relative()},
                       {"system_pass", system_pass},
                       {"amplitude_quotient", ab.quotient},
                       {"amplitude_balanced", ab.balanced},
                       {"velocity_consistent", velocity_consistent}};
  out["pass"] = ode_pass && system_pass && amplitude_pass && velocity_consistent;
  write_text(opt.out, out.dump(2) + "\n");
  return 0;
}

int cmd_system(const CliOptions& opt) {
  require_format(opt, "json");
  Resolved r = resolve(opt);
  const PhysicalParameters params = resolve_params(r, opt);
  const SignTriple signs = resolve_signs(r, opt);

  const CandidateVector candidate = to_candidate(solve_coefficients(params, signs));
  const auto rows = compare_with_printed_system(candidate, params);

  json out = header_json(params, signs, 0.0, opt.stamp);
  out["candidate"] = json{{"B0", candidate.B0},
                          {"B1", candidate.B1},
                          {"C1", candidate.C1},
                          {"D1_imag", candidate.D1_imag},
                          {"v", candidate.v}};
  json jrows = json::array();
  double max_machine_rel = 0.0;
  for (const auto& row : rows) {
    max_machine_rel = std::max(max_machine_rel, row.machine_relative);
    jrows.push_back(json{{"k", row.k},
                         {"machine", complex_json(row.machine)},
                         {"machine_rel", row.machine_relative},
                         {"printed", complex_json(row.printed)},
                         {"printed_rel", row.printed_relative},
                         {"discrepancy", row.discrepancy}});
  }
  out["rows"] = jrows;
  out["max_machine_rel"] = max_machine_rel;
  write_text(opt.out, out.dump(2) + "\n");
  return 0;
}

int cmd_profile(const CliOptions& opt) {
  require_format(opt, "csv");
  Resolved r = resolve(opt);
  const PhysicalParameters params = resolve_params(r, opt);
  const SignTriple signs = resolve_signs(r, opt);
  const double x0 = r.number("x0", opt.x0, 0.0);
  const GridSpec grid = resolve_grid(r, opt);
  const std::vector<double> times = parse_times(opt.times);

  const TravelingWaveSolution sol = make_solution(params, signs, x0);
  std::ostringstream os;
  write_profile_csv(os, sol, grid, times);
  write_text(opt.out, os.str());
  return 0;
}

int cmd_simulate(const CliOptions& opt) {
  require_format(opt, "any");
  Resolved r = resolve(opt);
  const PhysicalParameters params = resolve_params(r, opt);
  const SignTriple signs = resolve_signs(r, opt);
  const double x0 = r.number("x0", opt.x0, 0.0);
  const GridSpec grid = resolve_grid(r, opt);

  if (opt.out == "-") throw InvalidParameters("simulate needs --out FILE for the trajectory");

  const TravelingWaveSolution sol = make_solution(params, signs, x0);
  const double safety = std::isnan(opt.safety) ? 0.9 : opt.safety;
  double dt = r.number("dt", opt.dt, -1.0);
  if (dt <= 0.0) {
    double u_scale = 0.0;
    for (int i = 0; i < grid.num_points; ++i) {
      u_scale = std::max(u_scale, std::abs(evaluate(sol, grid.x(i), 0.0)));
    }
    dt = stable_dt(params, grid, u_scale, safety);
  }
  const double t_end = r.number("t_end", opt.t_end);
  const int record_every = opt.record_every > 0 ? opt.record_every : 1 << 30;

  const SimulationRun run = simulate(sol, grid, TimeSpec{t_end, dt, safety}, record_every);

  write_trajectory_csv(opt.out, run, sol);
  const std::string metrics_path =
      opt.metrics_out.empty() ? opt.out + ".metrics.csv" : opt.metrics_out;
  write_metrics_csv(metrics_path, run);

  json summary = header_json(params, signs, x0, opt.stamp);
  summary["grid"] = json{{"x_left", grid.x_left},
                         {"x_right", grid.x_right},
                         {"num_points", grid.num_points},
                         {"dx", grid.dx()}};
  summary["dt"] = dt;
  summary["t_end"] = t_end;
  summary["final_l_inf"] = run.metrics.back().l_inf;
  summary["final_l2"] = run.metrics.back().l2;
  summary["records"] = run.states.size();
  summary["trajectory"] = opt.out;
  summary["metrics"] = metrics_path;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const CliOptions& opt) {
  require_format(opt, "any");
  Resolved r = resolve(opt);
  const PhysicalParameters params = resolve_params(r, opt);
  const int eps3 = r.sign("eps3", opt.eps3, -1);

  SweepParameter varying;
  if (opt.varying == "alpha") {
    varying = SweepParameter::Alpha;
  } else if (opt.varying == "beta") {
    varying = SweepParameter::Beta;
  } else if (opt.varying == "mu") {
    varying = SweepParameter::Mu;
  } else if (opt.varying == "s") {
    varying = SweepParameter::S;
  } else {
    throw InvalidParameters("--varying must be one of alpha|beta|mu|s");
  }

  const SweepSpec spec{varying, r.number("lo", opt.lo), r.number("hi", opt.hi),
                       opt.count > 0 ? opt.count : 101, params, eps3};
  const MonotonicityReport report = monotonicity_report(spec);

  if (opt.format == "json") {
    json out;
    out["schema"] = 1;
    out["varying"] = to_string(report.varying);
    out["eps3"] = report.eps3;
    out["observed_head"] = report.observed_head;
    out["observed_tail"] = report.observed_tail;
    if (report.analytic_limit) out["analytic_limit"] = *report.analytic_limit;
    json segments = json::array();
    for (const auto& seg : report.segments) {
      segments.push_back(json{{"description", seg.description}, {"pass", seg.pass}});
    }
    out["segments"] = segments;
    out["pass"] = report.pass;
    write_text(opt.out, out.dump(2) + "\n");
    return 0;
  }

  std::ostringstream os;
  os << "varying_param,value,v,dv_dalpha,dv_dmu,dv_dabsbeta,dv_ds\n";
  char buf[160];
  for (const SweepSample& sample : report.samples) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  to_string(report.varying).c_str(), sample.value, sample.v,
                  sample.gradient.dalpha, sample.gradient.dmu, sample.gradient.dabs_beta,
                  sample.gradient.ds);
    os << buf;
  }
  write_text(opt.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling solitary waves of the compound Burgers-KdV equation"};
  app.require_subcommand(1);

  CliOptions opt;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", opt.alpha, "quadratic convection coefficient (> 0)");
    cmd->add_option("--beta", opt.beta, "cubic convection coefficient (< 0)");
    cmd->add_option("--mu", opt.mu, "viscosity (>= 0)");
    cmd->add_option("--s", opt.s, "dispersion coefficient (> 0)");
    cmd->add_option("--eps1", opt.eps1, "sign choice eps1 (+1/-1), default 1");
    cmd->add_option("--eps2", opt.eps2, "sign choice eps2 (+1/-1), default -1");
    cmd->add_option("--eps3", opt.eps3, "sign choice eps3 (+1/-1), default -1");
    cmd->add_option("--eps", opt.eps, "sign of the imaginary amplitude (+1/-1), default 1");
    cmd->add_option("--x0", opt.x0, "phase shift, default 0");
    cmd->add_option("--config", opt.config_path, "JSON config; flags override its values");
    cmd->add_option("--out", opt.out, "output path, '-' for stdout (default)");
    cmd->add_option("--format", opt.format, "output format json|csv where applicable");
    cmd->add_flag("--stamp", opt.stamp, "add a timestamp field to JSON outputs");
  };

  CLI::App* solve = app.add_subcommand("solve", "construct the closed-form coefficients");
  add_common(solve);

  CLI::App* verify =
      app.add_subcommand("verify", "check ODE residual, algebraic system, amplitude balance");
  add_common(verify);

  CLI::App* system_cmd =
      app.add_subcommand("system", "dump machine-generated vs printed algebraic system");
  add_common(system_cmd);

  CLI::App* profile = app.add_subcommand("profile", "sample the analytic wave on a grid");
  add_common(profile);
  profile->add_option("--grid", opt.grid, "spatial extent lo:hi");
  profile->add_option("--dx", opt.dx, "grid spacing");
  profile->add_option("--times", opt.times, "comma-separated sample times, default 0");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "integrate the PDE from the analytic profile");
  add_common(simulate_cmd);
  simulate_cmd->add_option("--grid", opt.grid, "spatial extent lo:hi");
  simulate_cmd->add_option("--dx", opt.dx, "grid spacing");
  simulate_cmd->add_option("--dt", opt.dt, "time step; defaults to the stability guard");
  simulate_cmd->add_option("--t-end", opt.t_end, "final time");
  simulate_cmd->add_option("--safety", opt.safety, "stability safety factor, default 0.9");
  simulate_cmd->add_option("--record-every", opt.record_every,
                           "record every N-th step (default: initial and final only)");
  simulate_cmd->add_option("--metrics-out", opt.metrics_out,
                           "metrics CSV path, default <out>.metrics.csv");

  CLI::App* sweep = app.add_subcommand("sweep", "velocity sweep over one parameter");
  add_common(sweep);
  sweep->add_option("--varying", opt.varying, "alpha|beta|mu|s (beta range is in |beta|)");
  sweep->add_option("--lo", opt.lo, "sweep lower bound");
  sweep->add_option("--hi", opt.hi, "sweep upper bound");
  sweep->add_option("--count", opt.count, "number of samples, default 101");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (system_cmd->parsed()) return cmd_system(opt);
    if (profile->parsed()) return cmd_profile(opt);
    if (simulate_cmd->parsed()) return cmd_simulate(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
  } catch (const Error& e) {
    std::string message = e.what();
    const std::string prefix = e.code() + ": ";
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    json err{{"schema", 1}, {"error", e.code()}, {"message", message}};
    std::cerr << err.dump() << "\n";
    switch (e.kind()) {
      case ErrorKind::Validation: return 1;
      case ErrorKind::Numerical: return 2;
      case ErrorKind::Io: return 3;
    }
  } catch (const std::exception& e) {
    json err{{"schema", 1}, {"error", "InternalError"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
