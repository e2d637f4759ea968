#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace papperitz {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Tolerance used by every "is this parameter an integer" decision.
inline constexpr double kIntegerTolerance = 1e-10;

inline bool is_finite(cplx x) noexcept {
  return std::isfinite(x.real()) && std::isfinite(x.imag());
}

inline bool is_integer_close(cplx x, double tol = kIntegerTolerance) noexcept {
  return std::abs(x.real() - std::round(x.real())) <= tol && std::abs(x.imag()) <= tol;
}

inline bool is_nonpositive_integer_close(cplx x, double tol = kIntegerTolerance) noexcept {
  return is_integer_close(x, tol) && std::round(x.real()) <= 0.0;
}

/// Symmetric relative difference; exact zeros compare equal.
inline double rel_diff(cplx x, cplx y) noexcept {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

namespace detail {

// Stirling series for log Gamma, valid once Re z is large; the coefficients
// are B_2k / (2k (2k-1)).
inline cplx stirling_log_gamma(cplx z) {
  static constexpr std::array<double, 8> coeff = {
      1.0 / 12,   -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360,
      1.0 / 156,  -3617.0 / 122400};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx power = inv;
  for (double c : coeff) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// Gamma for Re z >= 0.5: shift up to Re z >= 12, then divide the shift out.
inline cplx gamma_right(cplx z) {
  cplx shift = 1.0;
  while (z.real() < 12.0) {
    shift *= z;
    z += 1.0;
  }
  return std::exp(stirling_log_gamma(z)) / shift;
}

}  // namespace detail

/// Complex Gamma function. Poles are not guarded; use rgamma near them.
inline cplx gamma(cplx z) {
  if (z.real() < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * z) * detail::gamma_right(1.0 - z));
  }
  return detail::gamma_right(z);
}

/// Reciprocal Gamma, exactly zero at the nonpositive integers.
inline cplx rgamma(cplx z) {
  if (is_nonpositive_integer_close(z)) return 0.0;
  if (z.real() < 0.5) {
    return std::sin(std::numbers::pi * z) * detail::gamma_right(1.0 - z) / std::numbers::pi;
  }
  return 1.0 / detail::gamma_right(z);
}

}  // namespace papperitz
