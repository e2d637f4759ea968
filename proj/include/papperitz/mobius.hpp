#pragma once

// The bilinear change of variable t = (z - i)/(z + i) and its inverse, which
// carry the singular points z = i, z = -i of the equation to t = 0, t = inf.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "papperitz/error.hpp"
#include "papperitz/numeric.hpp"

namespace papperitz::mobius {

inline constexpr double kPoleTolerance = 1e-14;

inline void require_not_minus_i(cplx z) {
  if (std::abs(z + kI) <= kPoleTolerance * (1.0 + std::abs(z))) {
    throw Error(ErrorKind::PoleAtMinusI, "z is at the pole z = -i of the bilinear map");
  }
}

inline cplx z_to_t(cplx z) {
  require_not_minus_i(z);
  return (z - kI) / (z + kI);
}

inline cplx t_to_z(cplx t) {
  if (std::abs(1.0 - t) <= kPoleTolerance * (1.0 + std::abs(t))) {
    throw Error(ErrorKind::PoleAtOne, "t is at the pole t = 1 of the inverse map");
  }
  return kI * (1.0 + t) / (1.0 - t);
}

/// dt/dz = 2i/(z+i)^2
inline cplx dt_dz(cplx z) {
  require_not_minus_i(z);
  const cplx s = z + kI;
  return 2.0 * kI / (s * s);
}

/// d^2t/dz^2 = -4i/(z+i)^3
inline cplx d2t_dz2(cplx z) {
  require_not_minus_i(z);
  const cplx s = z + kI;
  return -4.0 * kI / (s * s * s);
}

/// w^e on the principal branch, exp(e Log w) with arg w in (-pi, pi].
/// A zero base is accepted only for exponents with positive real part.
inline cplx principal_power(cplx w, cplx e) {
  if (w == cplx{0.0, 0.0}) {
    if (e.real() > 0.0) return 0.0;
    throw Error(ErrorKind::ZeroBaseNonpositiveExponent,
                "0^e requires Re e > 0 (got Re e = " + std::to_string(e.real()) + ")");
  }
  if (e == cplx{1.0, 0.0}) return w;
  // std::log keeps arg(-x - 0i) = -pi; fold the negative real axis onto +pi.
  cplx log_w = std::log(w);
  if (w.imag() == 0.0 && w.real() < 0.0) log_w = {log_w.real(), std::numbers::pi};
  return std::exp(e * log_w);
}

}  // namespace papperitz::mobius
