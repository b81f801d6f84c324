#pragma once

// Stock dynamics under constant total effort:
//
//   dN/dt = r N (1 - N/K) - q E N^2 = r N (1 - N/K0),   K0 = rK / (r + qEK)
//
// The linear harvest law H = qEN is available as a comparison mode for the
// rate and equilibrium functions only.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "fishgame/params.hpp"

namespace fishgame {

enum class HarvestLaw { Quadratic, Linear };

struct RatesSnapshot {
  double growth = 0.0;
  double harvest = 0.0;
  double net = 0.0;
};

enum class Stability { Stable, Unstable };

struct StabilityResult {
  Stability kind;
  double derivative;  // df/dN at the equilibrium
};

/// Logistic growth W = r n (1 - n/K).
inline double growth(const ModelParams& p, double n) {
  detail::require_nonnegative(n, "biomass");
  return p.r() * n * (1.0 - n / p.K());
}

inline double harvest_rate(const ModelParams& p, double effort, double n,
                           HarvestLaw law = HarvestLaw::Quadratic) {
  detail::require_nonnegative(effort, "effort");
  detail::require_nonnegative(n, "biomass");
  return law == HarvestLaw::Quadratic ? p.q() * effort * n * n
                                      : p.q() * effort * n;
}

inline RatesSnapshot net_rate(const ModelParams& p, double effort, double n,
                              HarvestLaw law = HarvestLaw::Quadratic) {
  RatesSnapshot s;
  s.growth = growth(p, n);
  s.harvest = harvest_rate(p, effort, n, law);
  s.net = s.growth - s.harvest;
  return s;
}

/// Non-trivial equilibrium K0 = rK/(r + qEK) of the quadratic-harvest model.
inline double nontrivial_equilibrium(const ModelParams& p, double effort) {
  detail::require_nonnegative(effort, "effort");
  const double qe = p.q() * effort;
  if (qe == 0.0) return p.K();
  return p.r() * p.K() / (p.r() + qe * p.K());
}

/// (trivial, non-trivial) equilibria. Under the linear law the non-trivial
/// value K(1 - qE/r) is floored at 0 once effort exceeds r/q.
inline std::pair<double, double> equilibria(
    const ModelParams& p, double effort,
    HarvestLaw law = HarvestLaw::Quadratic) {
  if (law == HarvestLaw::Quadratic) return {0.0, nontrivial_equilibrium(p, effort)};
  detail::require_nonnegative(effort, "effort");
  const double k = p.K() * (1.0 - p.q() * effort / p.r());
  return {0.0, k > 0.0 ? k : 0.0};
}

/// df/dN = r - 2rN/K - 2qEN for the quadratic law.
inline double net_rate_derivative(const ModelParams& p, double effort, double n) {
  detail::require_nonnegative(effort, "effort");
  detail::require_nonnegative(n, "biomass");
  return p.r() - 2.0 * p.r() * n / p.K() - 2.0 * p.q() * effort * n;
}

/// Classifies one of the two equilibria. At N = 0 the derivative is r; at
/// N = K0 it simplifies to exactly -r for every effort level.
inline StabilityResult classify_stability(const ModelParams& p, double effort,
                                          double n_eq) {
  detail::require_finite(n_eq, "n_eq");
  const double k0 = nontrivial_equilibrium(p, effort);
  const double tol = 1e-9 * std::fmax(1.0, k0);
  if (std::fabs(n_eq) <= tol) return {Stability::Unstable, p.r()};
  if (std::fabs(n_eq - k0) <= tol) return {Stability::Stable, -p.r()};
  throw DomainError("n_eq is not an equilibrium of the stock dynamics");
}

/// Analytic trajectory of dN/dt = r N (1 - N/K0) by separation of variables.
class ClosedFormSolution {
public:
  enum class Branch { Below, Above, At };

  ClosedFormSolution(const ModelParams& p, double effort, double n0)
      : r_(p.r()), n0_(n0) {
    detail::require_nonnegative(n0, "n0");
    k0_ = nontrivial_equilibrium(p, effort);
    if (n0 == k0_) {
      branch_ = Branch::At;
      b_ = 0.0;
    } else {
      branch_ = k0_ > n0 ? Branch::Below : Branch::Above;
      b_ = n0 / std::fabs(k0_ - n0);
    }
  }

  double k0() const noexcept { return k0_; }
  /// Integration constant B = N(0)/|K0 - N(0)|; meaningless on Branch::At.
  double b() const noexcept { return b_; }
  Branch branch() const noexcept { return branch_; }

  /// N(t). Evaluated as B K0 / (e^{-rt} + B) (below) and
  /// B K0 / (B - e^{-rt}) (above), which are the separated solutions divided
  /// through by e^{rt}.
  double operator()(double t) const {
    detail::require_finite(t, "t");
    if (t < 0.0) throw DomainError("t must be >= 0");
    if (n0_ == 0.0) return 0.0;
    if (branch_ == Branch::At) return k0_;
    const double decay = std::exp(-r_ * t);
    if (branch_ == Branch::Below) return b_ * k0_ / (decay + b_);
    // B = n0/(n0 - K0) > 1 above the equilibrium, so B - e^{-rt} > 0 for t >= 0.
    const double denom = b_ - decay;
    if (!(denom > 0.0)) throw DomainError("closed-form denominator lost its sign");
    return b_ * k0_ / denom;
  }

private:
  double r_;
  double n0_;
  double k0_;
  double b_;
  Branch branch_;
};

inline double closed_form(const ModelParams& p, double effort, double n0, double t) {
  return ClosedFormSolution(p, effort, n0)(t);
}

struct Trajectory {
  std::vector<double> times;
  std::vector<double> biomass;
  /// Set when any step undershot zero and was clamped.
  bool clamped = false;
};

/// One classical fourth-order Runge-Kutta step for y' = f(t, y).
template <typename F>
double rk4_step(F&& f, double t, double y, double h) {
  const double k1 = f(t, y);
  const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const double k4 = f(t + h, y + h * k3);
  return y + h * (k1 + 2.0 * (k2 + k3) + k4) / 6.0;
}

/// Fixed-step RK4 on [0, t_end]. The last step is shortened to land on t_end.
/// Biomass is clamped at 0 after every step.
inline Trajectory integrate(const ModelParams& p, double effort, double n0,
                            double t_end, double dt = 1e-3,
                            HarvestLaw law = HarvestLaw::Quadratic) {
  detail::require_nonnegative(effort, "effort");
  detail::require_nonnegative(n0, "n0");
  detail::require_positive(t_end, "t_end");
  detail::require_positive(dt, "dt");
  if (dt > t_end) throw DomainError("dt must not exceed t_end");

  // Evaluated without the nonnegativity checks: RK4 stages may probe
  // slightly negative states near extinction.
  const double qe = p.q() * effort;
  auto rhs = [&](double, double n) {
    const double h = law == HarvestLaw::Quadratic ? qe * n * n : qe * n;
    return p.r() * n * (1.0 - n / p.K()) - h;
  };

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.biomass.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.biomass.push_back(n0);

  double n = n0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t0 = static_cast<double>(i - 1) * dt;
    const double t1 = i == steps ? t_end : static_cast<double>(i) * dt;
    n = rk4_step(rhs, t0, n, t1 - t0);
    if (n < 0.0) {
      n = 0.0;
      traj.clamped = true;
    }
    traj.times.push_back(t1);
    traj.biomass.push_back(n);
  }
  return traj;
}

}  // namespace fishgame
