#pragma once

#include <cmath>

namespace fishgame {

/// Real cube root; negative arguments map to -|x|^{1/3}, never the principal
/// complex root.
inline double real_cbrt(double x) noexcept { return std::cbrt(x); }

/// The unique real root of the depressed cubic y^3 + p y + q = 0 when its
/// discriminant q^2/4 + p^3/27 is positive (Cardano).
///
/// The larger-magnitude term u is formed without cancellation and the other
/// follows from u v = -p/3.
inline double cardano_real_root(double p, double q) noexcept {
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  const double s = std::sqrt(disc);
  const double u = q <= 0.0 ? real_cbrt(-q / 2.0 + s) : real_cbrt(-q / 2.0 - s);
  if (u == 0.0) return 0.0;
  return u - p / (3.0 * u);
}

}  // namespace fishgame
