#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fishgame {

/// Raised for inputs outside an operation's domain (negative biomass,
/// non-finite values, q = 0 where catch technology is required, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when a target harvest lies above the steady-state curve's peak.
class InfeasibleTarget : public std::runtime_error {
public:
  InfeasibleTarget(const std::string& what, double peak)
      : std::runtime_error(what), peak_(peak) {}
  double peak() const noexcept { return peak_; }

private:
  double peak_;
};

namespace detail {

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw DomainError(std::string(name) + " must be finite");
}

inline void require_nonnegative(double v, const char* name) {
  require_finite(v, name);
  if (v < 0.0) throw DomainError(std::string(name) + " must be >= 0");
}

inline void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) throw DomainError(std::string(name) + " must be > 0");
}

}  // namespace detail

/// Biological and economic constants of the fishery.
///
/// r: intrinsic growth rate, K: carrying capacity, q: catchability under the
/// quadratic harvest law H = qEN^2, P: unit price of harvest, C: unit cost of
/// effort. Validated on construction; immutable afterwards.
class ModelParams {
public:
  ModelParams(double r, double K, double q, double P, double C)
      : r_(r), K_(K), q_(q), P_(P), C_(C) {
    detail::require_positive(r, "r");
    detail::require_positive(K, "K");
    detail::require_nonnegative(q, "q");
    detail::require_positive(P, "P");
    detail::require_positive(C, "C");
  }

  /// r = P = 1, q = C = 1/sqrt(27), K = sqrt(27). Under these values the
  /// competitive equilibrium is (1, 1).
  static ModelParams reference_scenario() {
    const double s27 = std::sqrt(27.0);
    return ModelParams(1.0, s27, 1.0 / s27, 1.0, 1.0 / s27);
  }

  double r() const noexcept { return r_; }
  double K() const noexcept { return K_; }
  double q() const noexcept { return q_; }
  double P() const noexcept { return P_; }
  double C() const noexcept { return C_; }

  ModelParams with_r(double v) const { return {v, K_, q_, P_, C_}; }
  ModelParams with_K(double v) const { return {r_, v, q_, P_, C_}; }
  ModelParams with_q(double v) const { return {r_, K_, v, P_, C_}; }
  ModelParams with_P(double v) const { return {r_, K_, q_, v, C_}; }
  ModelParams with_C(double v) const { return {r_, K_, q_, P_, v}; }

  bool operator==(const ModelParams&) const = default;

private:
  double r_, K_, q_, P_, C_;
};

/// Effort levels of the two harvesters.
class EffortProfile {
public:
  EffortProfile() = default;
  EffortProfile(double e1, double e2) : e1_(e1), e2_(e2) {
    detail::require_nonnegative(e1, "e1");
    detail::require_nonnegative(e2, "e2");
  }

  double e1() const noexcept { return e1_; }
  double e2() const noexcept { return e2_; }
  double total() const noexcept { return e1_ + e2_; }

  /// Effort of player `i` (0 or 1).
  double operator[](int i) const noexcept { return i == 0 ? e1_ : e2_; }

  bool operator==(const EffortProfile&) const = default;

private:
  double e1_ = 0.0;
  double e2_ = 0.0;
};

}  // namespace fishgame
