#pragma once

// Closed-form solution basis of
//
//   (1+z^2)^2 y'' + 2 a z (1+z^2) y' + 4 (b + c z) y = 0.
//
// With t = (z-i)/(z+i) and y = t^lambda Y(t), Y satisfies the Gauss equation,
// so the two Frobenius solutions at z = i are
//
//   y1 = t^lambda     F(alpha, beta; gamma; t)
//   y2 = t^(1+lambda-gamma) F(alpha-gamma+1, beta-gamma+1; 2-gamma; t)
//
// where lambda solves lambda^2 - (1-a) lambda - (b + ic) = 0 and
//
//   Delta  = sqrt((1-a)^2 + 4(b + ic)),   Delta* = sqrt((1-a)^2 + 4(b - ic)),
//   lambda = (1 - a + Delta)/2,
//   alpha  = 1 - a + (Delta + Delta*)/2,  beta = 1 - a + (Delta - Delta*)/2,
//   gamma  = 1 + Delta.
//
// All square roots and powers are principal.

#include <array>
#include <cmath>
#include <complex>
#include <string_view>
#include <utility>

#include "papperitz/error.hpp"
#include "papperitz/hypergeom.hpp"
#include "papperitz/jet.hpp"
#include "papperitz/mobius.hpp"
#include "papperitz/numeric.hpp"

namespace papperitz {

struct EquationParams {
  cplx a{};
  cplx b{};
  cplx c{};

  void validate() const {
    if (!is_finite(a) || !is_finite(b) || !is_finite(c)) {
      throw Error(ErrorKind::InvalidArgument, "equation coefficients must be finite");
    }
  }
};

enum class DegeneracyClass {
  Generic,
  RepeatedExponent,
  FirstBasisInvalid,
  SecondBasisInvalid,
};

constexpr std::string_view to_string(DegeneracyClass d) noexcept {
  switch (d) {
    case DegeneracyClass::Generic: return "Generic";
    case DegeneracyClass::RepeatedExponent: return "RepeatedExponent";
    case DegeneracyClass::FirstBasisInvalid: return "FirstBasisInvalid";
    case DegeneracyClass::SecondBasisInvalid: return "SecondBasisInvalid";
  }
  return "Unknown";
}

enum class Basis { First, Second };

struct DerivedParams {
  EquationParams params;
  cplx delta;
  cplx delta_star;
  cplx lambda;
  cplx lambda2;
  cplx alpha;
  cplx beta;
  cplx gamma;
  DegeneracyClass degeneracy = DegeneracyClass::Generic;

  /// Hypergeometric parameters of the selected basis member.
  std::array<cplx, 3> hyp_params(Basis which) const {
    if (which == Basis::First) return {alpha, beta, gamma};
    return {alpha - gamma + 1.0, beta - gamma + 1.0, 2.0 - gamma};
  }

  /// Power of t multiplying F in the selected basis member.
  cplx exponent(Basis which) const { return which == Basis::First ? lambda : lambda2; }

  bool basis_valid(Basis which) const {
    switch (degeneracy) {
      case DegeneracyClass::Generic: return true;
      // Both members coincide; only the first is kept.
      case DegeneracyClass::RepeatedExponent: return which == Basis::First;
      case DegeneracyClass::FirstBasisInvalid: return which == Basis::Second;
      case DegeneracyClass::SecondBasisInvalid: return which == Basis::First;
    }
    return false;
  }
};

inline DerivedParams derive_params(const EquationParams& p) {
  p.validate();
#ifdef PAPPERITZ_MUTATE_NEGATE_C
  // Deliberately wrong build used to check that the self-test notices.
  const cplx c = -p.c;
#else
  const cplx c = p.c;
#endif
  const cplx one_minus_a = 1.0 - p.a;

  DerivedParams d;
  d.params = p;
  d.delta = std::sqrt(one_minus_a * one_minus_a + 4.0 * (p.b + kI * c));
  d.delta_star = std::sqrt(one_minus_a * one_minus_a + 4.0 * (p.b - kI * c));
  d.lambda = (one_minus_a + d.delta) / 2.0;
  d.lambda2 = (one_minus_a - d.delta) / 2.0;
  d.alpha = one_minus_a + (d.delta + d.delta_star) / 2.0;
  d.beta = one_minus_a + (d.delta - d.delta_star) / 2.0;
  d.gamma = 1.0 + d.delta;

  using hypergeom::HypParams;
  if (std::abs(d.delta) <= kIntegerTolerance) {
    d.degeneracy = DegeneracyClass::RepeatedExponent;
  } else if (!HypParams::gamma_admissible(d.alpha, d.beta, d.gamma)) {
    d.degeneracy = DegeneracyClass::FirstBasisInvalid;
  } else if (!HypParams::gamma_admissible(d.alpha - d.gamma + 1.0, d.beta - d.gamma + 1.0, 2.0 - d.gamma)) {
    d.degeneracy = DegeneracyClass::SecondBasisInvalid;
  }
  return d;
}

namespace detail {

inline void require_valid(const DerivedParams& d, Basis which) {
  if (!d.basis_valid(which)) {
    throw Error(ErrorKind::DegenerateBasis,
                std::string(which == Basis::First ? "first" : "second") +
                    " basis member is unavailable for degeneracy class " + std::string(to_string(d.degeneracy)));
  }
}

// t^e, with t^0 = 1 even at t = 0.
inline cplx power_or_one(cplx t, cplx e) {
  return e == cplx{0.0, 0.0} ? cplx{1.0, 0.0} : mobius::principal_power(t, e);
}

}  // namespace detail

/// t-jet of t^mu F(...; t) for the selected basis member.
inline TJet eval_basis_t(const DerivedParams& d, Basis which, cplx t, const hypergeom::SeriesControl& ctrl = {}) {
  detail::require_valid(d, which);
  const auto [ha, hb, hc] = d.hyp_params(which);
  const hypergeom::HypParams hp(ha, hb, hc);
  const cplx mu = d.exponent(which);

  const cplx f = hypergeom::gauss_2f1(hp, t, ctrl);
  const cplx df = hypergeom::gauss_2f1_derivative(hp, t, ctrl);
  const cplx d2f = hypergeom::gauss_2f1_second_derivative(hp, t, ctrl);

  const cplx p0 = detail::power_or_one(t, mu);
  const cplx p1 = mu == cplx{0.0, 0.0} ? cplx{} : detail::power_or_one(t, mu - 1.0);
  const cplx mm1 = mu * (mu - 1.0);
  const cplx p2 = mm1 == cplx{0.0, 0.0} ? cplx{} : detail::power_or_one(t, mu - 2.0);

  TJet jet;
  jet.y = p0 * f;
  jet.dy = mu * p1 * f + p0 * df;
  jet.d2y = mm1 * p2 * f + 2.0 * mu * p1 * df + p0 * d2f;
  return jet;
}

/// Converts a t-jet at t = z_to_t(z) into a z-jet by the chain rule.
inline ZJet to_z_jet(const TJet& jt, cplx z) {
  const cplx t1 = mobius::dt_dz(z);
  const cplx t2 = mobius::d2t_dz2(z);
  return {jt.y, jt.dy * t1, jt.d2y * t1 * t1 + jt.dy * t2};
}

inline ZJet eval_basis(const DerivedParams& d, Basis which, cplx z, const hypergeom::SeriesControl& ctrl = {}) {
  detail::require_valid(d, which);
  const cplx t = mobius::z_to_t(z);
  return to_z_jet(eval_basis_t(d, which, t, ctrl), z);
}

/// C1 y1 + C2 y2. A member that is unavailable may appear only with a zero
/// coefficient.
inline ZJet eval_solution(const DerivedParams& d, cplx c1, cplx c2, cplx z,
                          const hypergeom::SeriesControl& ctrl = {}) {
  mobius::require_not_minus_i(z);
  ZJet out;
  if (c1 != cplx{0.0, 0.0}) out = out + c1 * eval_basis(d, Basis::First, z, ctrl);
  if (c2 != cplx{0.0, 0.0}) out = out + c2 * eval_basis(d, Basis::Second, z, ctrl);
  return out;
}

inline cplx wronskian(const DerivedParams& d, cplx z, const hypergeom::SeriesControl& ctrl = {}) {
  const ZJet y1 = eval_basis(d, Basis::First, z, ctrl);
  const ZJet y2 = eval_basis(d, Basis::Second, z, ctrl);
  return y1.y * y2.dy - y2.y * y1.dy;
}

/// Coefficients (C1, C2) matching y(z0) = y0, y'(z0) = dy0.
inline std::pair<cplx, cplx> fit_ivp(const DerivedParams& d, cplx z0, cplx y0, cplx dy0,
                                     const hypergeom::SeriesControl& ctrl = {}) {
  if (d.degeneracy == DegeneracyClass::RepeatedExponent) {
    throw Error(ErrorKind::DegenerateWronskian, "repeated Frobenius exponent: the basis members coincide");
  }
  const ZJet y1 = eval_basis(d, Basis::First, z0, ctrl);
  const ZJet y2 = eval_basis(d, Basis::Second, z0, ctrl);
  const cplx w = y1.y * y2.dy - y2.y * y1.dy;
  const double scale = std::abs(y1.y) * std::abs(y2.dy) + std::abs(y2.y) * std::abs(y1.dy);
  if (!(std::abs(w) >= 1e-10 * scale) || w == cplx{0.0, 0.0}) {
    throw Error(ErrorKind::DegenerateWronskian, "Wronskian vanishes at z0 relative to the basis scale");
  }
  return {(y0 * y2.dy - y2.y * dy0) / w, (y1.y * dy0 - y0 * y1.dy) / w};
}

}  // namespace papperitz
