#pragma once

// Test-only reference computations. Nothing here calls into the solver code
// beyond ModelParams accessors.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "fishgame/params.hpp"

namespace fishgame::oracle {

/// Payoff of player 1 written out directly from the model.
inline double payoff1(const ModelParams& p, double e1, double e2) {
  const double d = p.r() + p.q() * (e1 + e2) * p.K();
  return p.q() * p.P() * e1 * p.r() * p.r() * p.K() * p.K() / (d * d) - p.C() * e1;
}

inline double steady_harvest(const ModelParams& p, double e) {
  const double d = p.r() + p.q() * e * p.K();
  return p.q() * e * p.r() * p.r() * p.K() * p.K() / (d * d);
}

struct GridMax {
  double argmax;
  double value;
  double cell;
};

/// Exhaustive search over `points` equally spaced samples of [lo, hi].
inline GridMax grid_argmax(const std::function<double(double)>& f, double lo, double hi,
                           int points) {
  const double cell = (hi - lo) / (points - 1);
  GridMax best{lo, f(lo), cell};
  for (int i = 1; i < points; ++i) {
    const double x = lo + cell * i;
    const double v = f(x);
    if (v > best.value) best = {x, v, cell};
  }
  return best;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Right-hand side of dN/dt, independent of the library's rate functions.
inline double stock_rhs(const ModelParams& p, double effort, double n) {
  return p.r() * n * (1.0 - n / p.K()) - p.q() * effort * n * n;
}

/// Random parameter sets with a strictly positive response threshold.
class ProfitableParams {
public:
  explicit ProfitableParams(std::uint64_t seed) : rng_(seed) {}

  ModelParams operator()() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
      const double r = 0.2 + 2.0 * u(rng_);
      const double K = 1.0 + 20.0 * u(rng_);
      const double q = 0.02 + 0.5 * u(rng_);
      const double P = 0.5 + 3.0 * u(rng_);
      const double C = 0.02 + 0.5 * u(rng_);
      const double thr = r * (std::sqrt(P / (q * C)) - 1.0 / (q * K));
      if (thr > 0.05) return ModelParams(r, K, q, P, C);
    }
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace fishgame::oracle
