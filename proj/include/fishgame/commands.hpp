#pragma once

// Report builders behind the command-line subcommands. Every command returns
// an ordered JSON document; CSV is rendered from it.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fishgame/dynamics.hpp"
#include "fishgame/game.hpp"
#include "fishgame/harvest.hpp"
#include "fishgame/scenario.hpp"

namespace fishgame {

using Report = nlohmann::ordered_json;

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::optional<double> effort;  // default: Nash total effort of the scenario
  double t_end = 40.0;
  double dt = 1e-3;
};

inline Report cmd_simulate(const ScenarioConfig& cfg, const SimulateOptions& opt = {}) {
  const auto& p = cfg.params;
  if (!(opt.t_end > 0.0) || !std::isfinite(opt.t_end)) throw DomainError("--t-end must be > 0");
  if (!(opt.dt > 0.0) || opt.dt > opt.t_end) throw DomainError("--dt must lie in (0, t_end]");
  const double effort = opt.effort ? *opt.effort : nash_summary(p, nash_solve(p, cfg.solver)).e_total;

  const ClosedFormSolution exact(p, effort, cfg.initial_biomass);
  const auto traj = integrate(p, effort, cfg.initial_biomass, opt.t_end, opt.dt);

  Report r;
  r["command"] = "simulate";
  r["scenario"] = cfg.name;
  r["params"] = params_to_json(p);
  r["effort"] = effort;
  r["n0"] = cfg.initial_biomass;
  r["t_end"] = opt.t_end;
  r["dt"] = opt.dt;
  r["k0"] = exact.k0();
  r["clamped"] = traj.clamped;
  r["columns"] = {"t", "N_closed_form", "N_integrated", "abs_diff"};
  auto rows = Report::array();
  double max_diff = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const double a = exact(t);
    const double d = std::fabs(a - traj.biomass[i]);
    max_diff = std::fmax(max_diff, d);
    rows.push_back({t, a, traj.biomass[i], d});
  }
  r["max_abs_diff"] = max_diff;
  r["rows"] = std::move(rows);
  return r;
}

// -------------------------------------------------------------------- nash

inline Report solution_to_json(const NashSolution& s) {
  Report j;
  j["e1"] = s.e1_star;
  j["e2"] = s.e2_star;
  j["e_total"] = s.e1_star + s.e2_star;
  j["h1"] = s.payoff.h1;
  j["h2"] = s.payoff.h2;
  j["h_total"] = s.payoff.h_total;
  j["u1"] = s.payoff.u1;
  j["u2"] = s.payoff.u2;
  j["iterations"] = s.iterations;
  j["residual"] = s.residual;
  return j;
}

/// i-th point of the Halton sequence in bases 2 and 3; index 0 is the origin.
inline std::pair<double, double> halton_point(unsigned index) {
  auto radical_inverse = [](unsigned i, unsigned base) {
    double f = 1.0, v = 0.0;
    while (i > 0) {
      f /= base;
      v += f * (i % base);
      i /= base;
    }
    return v;
  };
  return {radical_inverse(index, 2), radical_inverse(index, 3)};
}

/// Deterministic start points over [0, 2 * threshold]^2.
inline std::vector<EffortProfile> multistart_points(const ModelParams& p, int count) {
  const double span = std::fmax(0.0, 2.0 * response_threshold(p));
  std::vector<EffortProfile> pts;
  for (int i = 0; i < count; ++i) {
    const auto [u, v] = halton_point(static_cast<unsigned>(i));
    pts.emplace_back(span * u, span * v);
  }
  return pts;
}

class AllStartsFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline Report cmd_nash(const ScenarioConfig& cfg, int multistart = 1) {
  if (multistart < 1) throw DomainError("--multistart must be >= 1");
  const auto& p = cfg.params;

  Report starts = Report::array();
  std::vector<NashSolution> distinct;
  int failures = 0;
  const auto points = multistart == 1 ? std::vector<EffortProfile>{cfg.solver.init}
                                      : multistart_points(p, multistart);
  for (const auto& init : points) {
    SolverOptions opt = cfg.solver;
    opt.init = init;
    Report row;
    row["init"] = {init.e1(), init.e2()};
    try {
      const auto sol = nash_solve(p, opt);
      row["converged"] = true;
      row["solution"] = solution_to_json(sol);
      bool seen = false;
      for (const auto& d : distinct) {
        if (std::fabs(d.e1_star - sol.e1_star) <= 1e-6 && std::fabs(d.e2_star - sol.e2_star) <= 1e-6) {
          seen = true;
          break;
        }
      }
      if (!seen) distinct.push_back(sol);
    } catch (const ConvergenceFailure& f) {
      ++failures;
      row["converged"] = false;
      row["solution"] = solution_to_json(f.last_iterate());
    }
    starts.push_back(std::move(row));
  }
  if (distinct.empty()) throw AllStartsFailed("Nash iteration failed from every start point");

  Report r;
  r["command"] = "nash";
  r["scenario"] = cfg.name;
  r["params"] = params_to_json(p);
  r["threshold"] = response_threshold(p);
  r["solver"] = {{"tol", cfg.solver.tol},
                 {"max_iter", cfg.solver.max_iter},
                 {"damping", cfg.solver.damping}};
  r["multistart"] = multistart;
  r["failed_starts"] = failures;
  r["distinct_count"] = distinct.size();
  auto eqs = Report::array();
  for (const auto& d : distinct) eqs.push_back(solution_to_json(d));
  r["equilibria"] = std::move(eqs);
  r["starts"] = std::move(starts);
  return r;
}

// ------------------------------------------------------------ waste / coop

inline Report coop_to_json(const CooperativeReport& c) {
  Report j;
  j["e_joint"] = c.e_joint;
  j["u_joint"] = c.u_joint;
  j["u_nash_total"] = c.u_nash_total;
  j["gain"] = c.gain;
  j["e_nash_total"] = c.e_nash_total;
  j["split_rule"] = CooperativeReport::split_rule;
  j["u_joint_per_player"] = c.u_joint_per_player;
  return j;
}

inline Report cmd_waste(const ScenarioConfig& cfg, WasteMode mode = WasteMode::Exact) {
  const auto& p = cfg.params;
  const auto sol = nash_solve(p, cfg.solver);
  const auto w = waste_at_nash(p, sol, mode);
  Report r;
  r["command"] = "waste";
  r["scenario"] = cfg.name;
  r["params"] = params_to_json(p);
  r["mode"] = mode == WasteMode::Exact ? "exact" : "paper-rounded";
  r["nash"] = {{"e1", sol.e1_star}, {"e2", sol.e2_star}};
  r["h_total"] = w.h_total;
  r["e_low"] = w.roots.e_low;
  r["e_high"] = w.roots.e_high;
  r["waste"] = w.roots.waste;
  r["nash_total_effort"] = w.nash_total_effort;
  r["consistency"] = w.consistency;
  r["cooperative"] = coop_to_json(cooperative_optimum(p, cfg.solver));
  return r;
}

inline Report cmd_coop(const ScenarioConfig& cfg) {
  Report r;
  r["command"] = "coop";
  r["scenario"] = cfg.name;
  r["params"] = params_to_json(cfg.params);
  r["cooperative"] = coop_to_json(cooperative_optimum(cfg.params, cfg.solver));
  return r;
}

// ------------------------------------------------------------------ curves

struct CurvesOptions {
  std::optional<double> effort;  // default: Nash total effort
  int samples = 201;
};

/// Both curve families as one long table (series, x, y). Annotation rows mark
/// the stock crossing, the sustainable peak, the Nash total effort and the two
/// effort roots of the Nash harvest.
inline Report cmd_curves(const ScenarioConfig& cfg, const CurvesOptions& opt = {}) {
  if (opt.samples < 2) throw DomainError("--samples must be >= 2");
  const auto& p = cfg.params;
  const auto sol = nash_solve(p, cfg.solver);
  const auto summary = nash_summary(p, sol);
  const double effort = opt.effort ? *opt.effort : summary.e_total;
  const auto samples = static_cast<std::size_t>(opt.samples);

  const auto bio = figure_curve_data(p, effort, p.K(), samples);
  const auto peak = max_sustainable_point(p);
  const double e_max = std::fmax(4.0 * peak.effort, 1.5 * summary.e_total);
  const auto eff = effort_curve_data(p, e_max, samples);

  auto rows = Report::array();
  for (std::size_t i = 0; i < samples; ++i) rows.push_back({"growth", bio.n[i], bio.growth[i]});
  for (std::size_t i = 0; i < samples; ++i) rows.push_back({"harvest", bio.n[i], bio.harvest[i]});
  for (std::size_t i = 0; i < samples; ++i)
    rows.push_back({"harvest_effort", eff.effort[i], eff.harvest[i]});

  const double k0 = nontrivial_equilibrium(p, effort);
  rows.push_back({"annotation:k0", k0, growth(p, k0)});
  rows.push_back({"annotation:msy", peak.effort, peak.harvest});
  rows.push_back({"annotation:nash_total_effort", summary.e_total, summary.h_total});
  if (summary.h_total > 0.0) {
    const auto roots = effort_roots_for_harvest(p, summary.h_total);
    rows.push_back({"annotation:e_low", roots.e_low, steady_harvest_curve(p, roots.e_low)});
    rows.push_back({"annotation:e_high", roots.e_high, steady_harvest_curve(p, roots.e_high)});
  }

  Report r;
  r["command"] = "curves";
  r["scenario"] = cfg.name;
  r["params"] = params_to_json(p);
  r["effort"] = effort;
  r["k0"] = k0;
  if (bio.crossing) r["crossing"] = *bio.crossing;
  else r["crossing"] = nullptr;
  r["columns"] = {"series", "x", "y"};
  r["rows"] = std::move(rows);
  return r;
}

// ------------------------------------------------------------------- sweep

inline ModelParams with_parameter(const ModelParams& p, const std::string& name, double v) {
  if (name == "r") return p.with_r(v);
  if (name == "K") return p.with_K(v);
  if (name == "q") return p.with_q(v);
  if (name == "P") return p.with_P(v);
  if (name == "C") return p.with_C(v);
  throw ConfigError("unknown sweep parameter '" + name + "'");
}

/// One row per swept value, in input order. Rows whose value invalidates the
/// model, or whose solve fails, carry status != "ok" and null metrics.
inline Report cmd_sweep(const ScenarioConfig& cfg, const SweepSpec& spec) {
  if (!(spec.start < spec.stop)) throw ConfigError("sweep start must be < stop");
  if (spec.steps < 2) throw ConfigError("sweep steps must be >= 2");
  auto wants = [&](const char* m) {
    return std::find(spec.metrics.begin(), spec.metrics.end(), m) != spec.metrics.end();
  };

  std::vector<std::string> columns{spec.parameter, "status"};
  if (wants("nash")) {
    columns.push_back("e1");
    columns.push_back("e2");
  }
  if (wants("h_total")) columns.push_back("h_total");
  if (wants("waste")) columns.push_back("waste");
  if (wants("coop_gain")) columns.push_back("coop_gain");

  auto rows = Report::array();
  for (int i = 0; i < spec.steps; ++i) {
    const double v = i == spec.steps - 1
                         ? spec.stop
                         : spec.start + (spec.stop - spec.start) * i / (spec.steps - 1);
    Report row = Report::array();
    row.push_back(v);
    const std::size_t n_metrics = columns.size() - 2;
    try {
      const auto p = with_parameter(cfg.params, spec.parameter, v);
      const auto sol = nash_solve(p, cfg.solver);
      Report vals = Report::array();
      if (wants("nash")) {
        vals.push_back(sol.e1_star);
        vals.push_back(sol.e2_star);
      }
      if (wants("h_total")) vals.push_back(sol.payoff.h_total);
      if (wants("waste")) {
        if (sol.payoff.h_total > 0.0) vals.push_back(waste_at_nash(p, sol).roots.waste);
        else vals.push_back(0.0);
      }
      if (wants("coop_gain")) vals.push_back(cooperative_optimum(p, cfg.solver).gain);
      row.push_back("ok");
      for (auto& x : vals) row.push_back(std::move(x));
    } catch (const std::exception& e) {
      row.push_back(std::string("invalid: ") + e.what());
      for (std::size_t k = 0; k < n_metrics; ++k) row.push_back(nullptr);
    }
    rows.push_back(std::move(row));
  }

  Report r;
  r["command"] = "sweep";
  r["scenario"] = cfg.name;
  r["params"] = params_to_json(cfg.params);
  r["parameter"] = spec.parameter;
  r["columns"] = columns;
  r["rows"] = std::move(rows);
  return r;
}

// -------------------------------------------------------------- rendering

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_cell(const Report& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }
  return csv_cell(Report(v.dump()));
}

namespace detail {
inline void flatten(const Report& v, const std::string& prefix, std::ostringstream& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array()) {
    std::size_t i = 0;
    for (const auto& x : v) flatten(x, prefix + "." + std::to_string(i++), out);
  } else {
    out << csv_cell(Report(prefix)) << ',' << csv_cell(v) << '\n';
  }
}
}  // namespace detail

/// Tabular reports (those with "columns"/"rows") render as a header plus one
/// line per row; everything else renders as flattened key,value lines.
inline std::string to_csv(const Report& r) {
  std::ostringstream out;
  if (r.contains("columns") && r.contains("rows")) {
    bool first = true;
    for (const auto& c : r["columns"]) {
      out << (first ? "" : ",") << csv_cell(c);
      first = false;
    }
    out << '\n';
    for (const auto& row : r["rows"]) {
      first = true;
      for (const auto& c : row) {
        out << (first ? "" : ",") << csv_cell(c);
        first = false;
      }
      out << '\n';
    }
    return out.str();
  }
  out << "key,value\n";
  detail::flatten(r, "", out);
  return out.str();
}

inline std::string to_json(const Report& r) { return r.dump(2) + "\n"; }

inline std::string render(const Report& r, OutputFormat f) {
  return f == OutputFormat::Json ? to_json(r) : to_csv(r);
}

}  // namespace fishgame
