#pragma once

// Two-player static game over the steady-state harvest. Player i's payoff is
//
//   U_i = P q e_i (rK / (r + q (e1 + e2) K))^2 - C e_i
//
// and its best response to the opponent is the unique real root of a cubic
// whenever the opponent stays below the profitability threshold.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fishgame/cubic.hpp"
#include "fishgame/params.hpp"

namespace fishgame {

struct PayoffOutcome {
  double h1 = 0.0;
  double h2 = 0.0;
  double h_total = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
};

inline PayoffOutcome payoff(const ModelParams& p, const EffortProfile& e) {
  PayoffOutcome out;
  const double total = e.total();
  if (total > 0.0) {
    const double stock = p.r() * p.K() / (p.r() + p.q() * total * p.K());
    const double per_effort = p.q() * stock * stock;
    out.h1 = per_effort * e.e1();
    out.h2 = per_effort * e.e2();
  }
  out.h_total = out.h1 + out.h2;
  out.u1 = p.P() * out.h1 - p.C() * e.e1();
  out.u2 = p.P() * out.h2 - p.C() * e.e2();
  return out;
}

namespace detail {
inline void require_catch_technology(const ModelParams& p) {
  if (!(p.q() > 0.0)) throw DomainError("catchability q must be > 0 for the harvesting game");
}
}  // namespace detail

/// Opponent effort at or above which a player's best response is 0:
/// r (sqrt(P/(qC)) - 1/(qK)). May be <= 0 for unprofitable fisheries.
inline double response_threshold(const ModelParams& p) {
  detail::require_catch_technology(p);
  return p.r() * (std::sqrt(p.P() / (p.q() * p.C())) - 1.0 / (p.q() * p.K()));
}

struct BestResponseProblem {
  double beta;       // r/(qK) + opponent effort
  double amp;        // A = r^2 P / (qC)
  double threshold;  // response_threshold(p)
};

inline BestResponseProblem best_response_problem(const ModelParams& p,
                                                 double opponent_effort) {
  detail::require_catch_technology(p);
  detail::require_nonnegative(opponent_effort, "opponent effort");
  return {p.r() / (p.q() * p.K()) + opponent_effort,
          p.r() * p.r() * p.P() / (p.q() * p.C()), response_threshold(p)};
}

/// E^3 + a3 E^2 + b3 E + c3 = 0 together with its depressed form
/// y^3 + p_c y + q_c = 0, y = E + a3/3.
struct DepressedCubic {
  double a3;
  double b3;
  double c3;
  double p_c;
  double q_c;
  double disc;

  double evaluate(double e) const noexcept { return ((e + a3) * e + b3) * e + c3; }
};

inline DepressedCubic cubic_coefficients(const ModelParams& p, double opponent_effort) {
  const auto prob = best_response_problem(p, opponent_effort);
  const double b = prob.beta, A = prob.amp;
  DepressedCubic c{};
  c.a3 = 3.0 * b;
  c.b3 = 3.0 * b * b + A;
  c.c3 = b * b * b - A * b;
  // The substitution cancels exactly: p = A, q = -2 A beta.
  c.p_c = A;
  c.q_c = -2.0 * A * b;
  c.disc = c.q_c * c.q_c / 4.0 + c.p_c * c.p_c * c.p_c / 27.0;
  return c;
}

/// Payoff-maximizing effort against a fixed opponent. Zero when the opponent
/// is at or above the threshold; otherwise the real Cardano root of the
/// first-order condition, refined by one Newton step.
inline double best_response(const ModelParams& p, double opponent_effort) {
  const auto prob = best_response_problem(p, opponent_effort);
  if (opponent_effort >= prob.threshold) return 0.0;

  const auto cubic = cubic_coefficients(p, opponent_effort);
  double e = cardano_real_root(cubic.p_c, cubic.q_c) - prob.beta;

  // c3 = beta (beta - sqrt A)(beta + sqrt A) loses nothing near the threshold.
  const double b = prob.beta, sa = std::sqrt(prob.amp);
  const double c3 = b * (b - sa) * (b + sa);
  const double f = ((e + cubic.a3) * e + cubic.b3) * e + c3;
  const double df = (3.0 * e + 2.0 * cubic.a3) * e + cubic.b3;
  e -= f / df;
  return std::max(e, 0.0);
}

/// max_i |e_i - best_response(e_j)|.
inline double best_response_residual(const ModelParams& p, const EffortProfile& e) {
  return std::max(std::fabs(e.e1() - best_response(p, e.e2())),
                  std::fabs(e.e2() - best_response(p, e.e1())));
}

struct NashSolution {
  double e1_star = 0.0;
  double e2_star = 0.0;
  PayoffOutcome payoff;
  int iterations = 0;
  double residual = 0.0;

  EffortProfile efforts() const { return {e1_star, e2_star}; }
};

struct SolverOptions {
  double tol = 1e-9;
  int max_iter = 10000;
  double damping = 0.5;
  EffortProfile init{};
};

/// Raised by nash_solve when the iteration budget runs out. Carries the last
/// iterate so the caller can inspect or restart from it.
class ConvergenceFailure : public std::runtime_error {
public:
  ConvergenceFailure(const NashSolution& last)
      : std::runtime_error("Nash iteration did not converge: residual " +
                           std::to_string(last.residual) + " after " +
                           std::to_string(last.iterations) + " iterations"),
        last_(last) {}
  const NashSolution& last_iterate() const noexcept { return last_; }

private:
  NashSolution last_;
};

/// Damped simultaneous best-response iteration
///   e_i <- (1 - damping) e_i + damping * best_response(e_j)
/// until best_response_residual <= tol, then one undamped sweep that is kept
/// only if it lowers the residual.
inline NashSolution nash_solve(const ModelParams& p, const SolverOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw DomainError("tol must be > 0");
  if (opt.max_iter < 1) throw DomainError("max_iter must be >= 1");
  if (!(opt.damping > 0.0 && opt.damping <= 1.0))
    throw DomainError("damping must lie in (0, 1]");

  NashSolution sol;
  if (response_threshold(p) <= 0.0) {
    sol.payoff = payoff(p, {});
    return sol;
  }

  double e1 = opt.init.e1(), e2 = opt.init.e2();
  double res = best_response_residual(p, {e1, e2});
  int it = 0;
  while (res > opt.tol && it < opt.max_iter) {
    const double b1 = best_response(p, e2);
    const double b2 = best_response(p, e1);
    e1 = (1.0 - opt.damping) * e1 + opt.damping * b1;
    e2 = (1.0 - opt.damping) * e2 + opt.damping * b2;
    ++it;
    res = best_response_residual(p, {e1, e2});
  }

  if (res <= opt.tol) {
    // Finish with one undamped sweep. Damping only slows the final approach
    // when the best-response map is already contracting.
    const double b1 = best_response(p, e2);
    const double b2 = best_response(p, e1);
    const double polished = best_response_residual(p, {b1, b2});
    if (polished < res) {
      e1 = b1;
      e2 = b2;
      res = polished;
    }
  }

  sol.e1_star = e1;
  sol.e2_star = e2;
  sol.payoff = payoff(p, {e1, e2});
  sol.iterations = it;
  sol.residual = res;
  if (res > opt.tol) throw ConvergenceFailure(sol);
  return sol;
}

inline NashSolution nash_solve(const ModelParams& p, const EffortProfile& init,
                               double tol, int max_iter, double damping) {
  return nash_solve(p, SolverOptions{tol, max_iter, damping, init});
}

struct NashSummary {
  PayoffOutcome payoff;
  double e_total;
  double h_total;
};

inline NashSummary nash_summary(const ModelParams& p, const NashSolution& sol) {
  const auto out = payoff(p, sol.efforts());
  return {out, sol.e1_star + sol.e2_star, out.h1 + out.h2};
}

}  // namespace fishgame
