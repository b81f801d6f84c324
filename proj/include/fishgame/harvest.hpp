#pragma once

// Steady-state harvest as a function of total effort, the two effort levels
// that deliver a given harvest, and the competitive-vs-cooperative comparison.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fishgame/dynamics.hpp"
#include "fishgame/game.hpp"
#include "fishgame/params.hpp"

namespace fishgame {

/// H(E) = q E (rK / (r + qEK))^2, the harvest once the stock has settled at K0.
inline double steady_harvest_curve(const ModelParams& p, double total_effort) {
  detail::require_nonnegative(total_effort, "total effort");
  const double stock = nontrivial_equilibrium(p, total_effort);
  return p.q() * total_effort * stock * stock;
}

struct SustainablePoint {
  double effort;
  double harvest;
};

/// Peak of the steady harvest curve, reached at E = r/(qK).
inline SustainablePoint max_sustainable_point(const ModelParams& p) {
  detail::require_catch_technology(p);
  const double e = p.r() / (p.q() * p.K());
  return {e, steady_harvest_curve(p, e)};
}

/// H (r + qEK)^2 = q E r^2 K^2 rearranged as a2 E^2 + a1 E + a0 = 0.
struct HarvestEffortQuadratic {
  double a2;
  double a1;
  double a0;
  double disc_q;
};

inline HarvestEffortQuadratic harvest_effort_quadratic(const ModelParams& p, double h) {
  const double qK = p.q() * p.K();
  HarvestEffortQuadratic quad{};
  quad.a2 = h * qK * qK;
  quad.a1 = 2.0 * h * qK * p.r() - p.q() * p.r() * p.r() * p.K() * p.K();
  quad.a0 = h * p.r() * p.r();
  quad.disc_q = quad.a1 * quad.a1 - 4.0 * quad.a2 * quad.a0;
  return quad;
}

struct EffortRootsPair {
  double e_low;
  double e_high;
  double waste;
};

/// Exact: stable root formula on full-precision coefficients.
/// TwoDecimals: coefficients and sqrt(disc) rounded to two decimals before the
/// textbook formula, the way a hand calculation carries them.
enum class QuadraticRounding { Exact, TwoDecimals };

inline double round_to_decimals(double x, int places) {
  const double scale = std::pow(10.0, places);
  return std::round(x * scale) / scale;
}

inline EffortRootsPair effort_roots_for_harvest(
    const ModelParams& p, double h_target,
    QuadraticRounding rounding = QuadraticRounding::Exact) {
  detail::require_positive(h_target, "target harvest");
  const auto peak = max_sustainable_point(p);
  auto quad = harvest_effort_quadratic(p, h_target);

  if (rounding == QuadraticRounding::TwoDecimals) {
    quad.a2 = round_to_decimals(quad.a2, 2);
    quad.a1 = round_to_decimals(quad.a1, 2);
    quad.a0 = round_to_decimals(quad.a0, 2);
    quad.disc_q = quad.a1 * quad.a1 - 4.0 * quad.a2 * quad.a0;
  }

  // At the peak the discriminant vanishes; rounding may push it just below 0.
  const bool tangent = std::fabs(h_target - peak.harvest) <= 1e-12 * peak.harvest;
  if (quad.disc_q < 0.0 && !tangent) {
    throw InfeasibleTarget("target harvest " + std::to_string(h_target) +
                               " exceeds the sustainable peak " +
                               std::to_string(peak.harvest),
                           peak.harvest);
  }
  if (quad.disc_q <= 0.0 || tangent) {
    const double e = -quad.a1 / (2.0 * quad.a2);
    return {e, e, 0.0};
  }

  double lo, hi;
  if (rounding == QuadraticRounding::TwoDecimals) {
    const double sd = round_to_decimals(std::sqrt(quad.disc_q), 2);
    lo = (-quad.a1 - sd) / (2.0 * quad.a2);
    hi = (-quad.a1 + sd) / (2.0 * quad.a2);
  } else {
    // a1 < 0 below the peak, so -a1 + sqrt(disc) never cancels.
    const double sd = std::sqrt(quad.disc_q);
    const double t = -0.5 * (quad.a1 + std::copysign(sd, quad.a1));
    lo = t / quad.a2;
    hi = quad.a0 / t;
    if (lo > hi) std::swap(lo, hi);
  }
  return {lo, hi, hi - lo};
}

enum class WasteMode { Exact, PaperRounded };

struct WasteReport {
  double h_total;           // harvest used as the target (rounded in PaperRounded)
  double nash_total_effort;
  EffortRootsPair roots;
  double consistency;       // |e_high - Nash total effort|
};

/// Effort wasted by competitive play: the gap between the two total efforts
/// that deliver the Nash harvest. PaperRounded rounds H_T to two decimals and
/// carries two-decimal arithmetic through the quadratic.
inline WasteReport waste_at_nash(const ModelParams& p, const NashSolution& sol,
                                 WasteMode mode = WasteMode::Exact) {
  const auto summary = nash_summary(p, sol);
  WasteReport rep{};
  rep.nash_total_effort = summary.e_total;
  if (mode == WasteMode::Exact) {
    rep.h_total = summary.h_total;
    rep.roots = effort_roots_for_harvest(p, rep.h_total);
  } else {
    rep.h_total = round_to_decimals(summary.h_total, 2);
    rep.roots = effort_roots_for_harvest(p, rep.h_total, QuadraticRounding::TwoDecimals);
  }
  rep.consistency = std::fabs(rep.roots.e_high - rep.nash_total_effort);
  return rep;
}

struct CooperativeReport {
  double e_joint = 0.0;
  double u_joint = 0.0;
  double u_nash_total = 0.0;
  double gain = 0.0;
  double e_nash_total = 0.0;
  /// Joint payoff divided equally between the two players.
  double u_joint_per_player = 0.0;
  static constexpr const char* split_rule = "equal";
};

/// Joint payoff P H(E) - C E is the single-agent problem, i.e. the best
/// response to an opponent exerting no effort.
inline CooperativeReport cooperative_optimum(const ModelParams& p,
                                             const SolverOptions& opt = {}) {
  CooperativeReport rep;
  if (response_threshold(p) <= 0.0) return rep;
  rep.e_joint = best_response(p, 0.0);
  rep.u_joint = p.P() * steady_harvest_curve(p, rep.e_joint) - p.C() * rep.e_joint;
  const auto nash = nash_solve(p, opt);
  rep.u_nash_total = nash.payoff.u1 + nash.payoff.u2;
  rep.e_nash_total = nash.e1_star + nash.e2_star;
  rep.gain = rep.u_joint - rep.u_nash_total;
  rep.u_joint_per_player = 0.5 * rep.u_joint;
  return rep;
}

struct BiomassCurves {
  std::vector<double> n;
  std::vector<double> growth;
  std::vector<double> harvest;
  /// First positive N where growth and harvest cross, linearly interpolated.
  std::optional<double> crossing;
};

inline BiomassCurves figure_curve_data(const ModelParams& p, double effort,
                                       double n_max, std::size_t samples) {
  detail::require_positive(n_max, "n_max");
  if (samples < 2) throw DomainError("samples must be >= 2");
  BiomassCurves c;
  c.n.reserve(samples);
  c.growth.reserve(samples);
  c.harvest.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double n = n_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    c.n.push_back(n);
    c.growth.push_back(growth(p, n));
    c.harvest.push_back(harvest_rate(p, effort, n));
  }
  // Per-capita net rate r(1 - n/K) - qEn changes sign where the curves cross.
  auto per_capita = [&](double n) { return p.r() * (1.0 - n / p.K()) - p.q() * effort * n; };
  for (std::size_t i = 1; i < samples; ++i) {
    const double d0 = per_capita(c.n[i - 1]);
    const double d1 = per_capita(c.n[i]);
    if (d0 > 0.0 && d1 <= 0.0) {
      c.crossing = c.n[i - 1] + (c.n[i] - c.n[i - 1]) * d0 / (d0 - d1);
      break;
    }
  }
  return c;
}

struct EffortCurve {
  std::vector<double> effort;
  std::vector<double> harvest;
};

inline EffortCurve effort_curve_data(const ModelParams& p, double e_max, std::size_t samples) {
  detail::require_positive(e_max, "e_max");
  if (samples < 2) throw DomainError("samples must be >= 2");
  EffortCurve c;
  for (std::size_t i = 0; i < samples; ++i) {
    const double e = e_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    c.effort.push_back(e);
    c.harvest.push_back(steady_harvest_curve(p, e));
  }
  return c;
}

}  // namespace fishgame
