#pragma once

// Gauss hypergeometric function F(alpha, beta; gamma; t) for complex parameters
// and argument on the principal branch (cut along t in [1, inf)).
//
// Evaluation picks one of a few argument reductions so that every power series
// actually summed has modulus at most SeriesControl::region_cutoff:
//   |t| <= r            Maclaurin series
//   |t/(t-1)| <= r      Pfaff transformation
//   |1-t| <= r          Gauss connection formula in powers of (1-t)
// When gamma-alpha or gamma-beta is a nonpositive integer the Euler
// transformation turns F into a power of (1-t) times a polynomial, which is
// used as a last resort anywhere off the cut. Anything else is reported as
// unreachable instead of being approximated.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>

#include "papperitz/error.hpp"
#include "papperitz/mobius.hpp"
#include "papperitz/numeric.hpp"

namespace papperitz::hypergeom {

struct SeriesControl {
  double rel_tol = 1e-15;
  int max_terms = 10000;
  double region_cutoff = 0.7;

  void validate() const {
    if (!(rel_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "rel_tol must be positive");
    if (max_terms < 1) throw Error(ErrorKind::InvalidArgument, "max_terms must be >= 1");
    if (!(region_cutoff > 0.0 && region_cutoff < 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "region_cutoff must lie in (0, 1)");
    }
  }
};

/// Degree of the terminating series when alpha or beta is a nonpositive
/// integer -k; the smaller k wins.
inline std::optional<int> polynomial_degree(cplx alpha, cplx beta) {
  std::optional<int> degree;
  for (cplx x : {alpha, beta}) {
    if (is_nonpositive_integer_close(x)) {
      const int k = static_cast<int>(-std::round(x.real()));
      degree = degree ? std::min(*degree, k) : k;
    }
  }
  return degree;
}

/// Parameter triple of F. Construction rejects gamma at a nonpositive integer
/// unless the series terminates before (gamma)_n vanishes.
class HypParams {
 public:
  HypParams(cplx alpha, cplx beta, cplx gamma) : alpha_(alpha), beta_(beta), gamma_(gamma) {
    if (!is_finite(alpha) || !is_finite(beta) || !is_finite(gamma)) {
      throw Error(ErrorKind::InvalidArgument, "hypergeometric parameters must be finite");
    }
    if (!gamma_admissible(alpha, beta, gamma)) {
      std::ostringstream msg;
      msg << "gamma = " << gamma << " is a nonpositive integer and the series does not terminate";
      throw Error(ErrorKind::InvalidGamma, msg.str());
    }
  }

  static bool gamma_admissible(cplx alpha, cplx beta, cplx gamma) {
    if (!is_nonpositive_integer_close(gamma)) return true;
    const auto degree = hypergeom::polynomial_degree(alpha, beta);
    return degree && *degree <= static_cast<int>(std::abs(std::round(gamma.real())));
  }

  cplx alpha() const noexcept { return alpha_; }
  cplx beta() const noexcept { return beta_; }
  cplx gamma() const noexcept { return gamma_; }

  std::optional<int> polynomial_degree() const { return hypergeom::polynomial_degree(alpha_, beta_); }

 private:
  cplx alpha_;
  cplx beta_;
  cplx gamma_;
};

enum class EvalStrategy {
  DirectSeries,
  PfaffOnAlpha,
  PfaffOnBeta,
  OneMinusTConnection,
  PolynomialTruncation,
  EulerPolynomial,
  Unreachable,
};

constexpr std::string_view to_string(EvalStrategy s) noexcept {
  switch (s) {
    case EvalStrategy::DirectSeries: return "DirectSeries";
    case EvalStrategy::PfaffOnAlpha: return "PfaffOnAlpha";
    case EvalStrategy::PfaffOnBeta: return "PfaffOnBeta";
    case EvalStrategy::OneMinusTConnection: return "OneMinusTConnection";
    case EvalStrategy::PolynomialTruncation: return "PolynomialTruncation";
    case EvalStrategy::EulerPolynomial: return "EulerPolynomial";
    case EvalStrategy::Unreachable: return "Unreachable";
  }
  return "Unknown";
}

/// Partial sums of sum_n (alpha)_n (beta)_n / ((gamma)_n n!) w^n.
///
/// Terminating parameters are summed exactly to their degree for any w.
/// Otherwise |w| < 1 is required and summation stops once two consecutive
/// terms fall below rel_tol relative to the running sum.
inline cplx raw_series(const HypParams& p, cplx w, const SeriesControl& ctrl = {}) {
  const cplx a = p.alpha();
  const cplx b = p.beta();
  const cplx c = p.gamma();

  if (const auto degree = p.polynomial_degree()) {
    cplx term = 1.0;
    cplx sum = 1.0;
    for (int n = 0; n < *degree; ++n) {
      const double dn = n;
      term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * w;
      sum += term;
    }
    return sum;
  }

  if (!(std::abs(w) < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "raw_series needs |w| < 1 for non-terminating parameters");
  }

  cplx term = 1.0;
  cplx sum = 1.0;
  int small_terms = 0;
  for (int n = 0; n < ctrl.max_terms; ++n) {
    const double dn = n;
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * w;
    sum += term;
    if (std::abs(term) <= ctrl.rel_tol * std::abs(sum)) {
      if (++small_terms == 2) return sum;
    } else {
      small_terms = 0;
    }
  }
  std::ostringstream msg;
  msg << "series did not converge within " << ctrl.max_terms << " terms at w = " << w;
  throw Error(ErrorKind::NoConvergence, msg.str());
}

inline EvalStrategy select_strategy(const HypParams& p, cplx t, const SeriesControl& ctrl = {}) {
  const double r = ctrl.region_cutoff;
  if (p.polynomial_degree()) return EvalStrategy::PolynomialTruncation;
  if (std::abs(t) <= r) return EvalStrategy::DirectSeries;
  if (std::abs(t) <= r * std::abs(t - 1.0)) {
    // Prefer the variant whose transformed series terminates.
    const bool alpha_side_terminates = is_nonpositive_integer_close(p.gamma() - p.beta());
    const bool beta_side_terminates = is_nonpositive_integer_close(p.gamma() - p.alpha());
    return beta_side_terminates && !alpha_side_terminates ? EvalStrategy::PfaffOnBeta
                                                          : EvalStrategy::PfaffOnAlpha;
  }
  if (std::abs(1.0 - t) <= r && !is_integer_close(p.gamma() - p.alpha() - p.beta())) {
    return EvalStrategy::OneMinusTConnection;
  }
  if (polynomial_degree(p.gamma() - p.alpha(), p.gamma() - p.beta())) return EvalStrategy::EulerPolynomial;
  return EvalStrategy::Unreachable;
}

inline constexpr double kBranchCutTolerance = 1e-12;

inline bool on_branch_cut(cplx t) noexcept {
  return std::abs(t.imag()) <= kBranchCutTolerance && t.real() >= 1.0 - kBranchCutTolerance;
}

namespace detail {

inline cplx connection_one_minus_t(const HypParams& p, cplx t, const SeriesControl& ctrl) {
  const cplx a = p.alpha();
  const cplx b = p.beta();
  const cplx c = p.gamma();
  const cplx s = c - a - b;
  const cplx w = 1.0 - t;

  const cplx gamma_c = gamma(c);
  const cplx coeff1 = gamma_c * gamma(s) * rgamma(c - a) * rgamma(c - b);
  const cplx coeff2 = gamma_c * gamma(-s) * rgamma(a) * rgamma(b);

  cplx value = 0.0;
  if (coeff1 != cplx{0.0, 0.0}) value += coeff1 * raw_series(HypParams(a, b, 1.0 - s), w, ctrl);
  if (coeff2 != cplx{0.0, 0.0}) {
    value += coeff2 * mobius::principal_power(w, s) * raw_series(HypParams(c - a, c - b, 1.0 + s), w, ctrl);
  }
  return value;
}

}  // namespace detail

/// F(alpha, beta; gamma; t) on the principal branch.
inline cplx gauss_2f1(const HypParams& p, cplx t, const SeriesControl& ctrl = {}) {
  ctrl.validate();
  const EvalStrategy strategy = select_strategy(p, t, ctrl);
  if (strategy != EvalStrategy::PolynomialTruncation && on_branch_cut(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " lies on the branch cut [1, inf)";
    throw Error(ErrorKind::OnBranchCut, msg.str());
  }

  const cplx a = p.alpha();
  const cplx b = p.beta();
  const cplx c = p.gamma();
  switch (strategy) {
    case EvalStrategy::PolynomialTruncation:
    case EvalStrategy::DirectSeries:
      return raw_series(p, t, ctrl);
    case EvalStrategy::PfaffOnAlpha:
      return mobius::principal_power(1.0 - t, -a) * raw_series(HypParams(a, c - b, c), t / (t - 1.0), ctrl);
    case EvalStrategy::PfaffOnBeta:
      return mobius::principal_power(1.0 - t, -b) * raw_series(HypParams(c - a, b, c), t / (t - 1.0), ctrl);
    case EvalStrategy::OneMinusTConnection:
      return detail::connection_one_minus_t(p, t, ctrl);
    case EvalStrategy::EulerPolynomial:
      return mobius::principal_power(1.0 - t, c - a - b) * raw_series(HypParams(c - a, c - b, c), t, ctrl);
    case EvalStrategy::Unreachable:
      break;
  }
  std::ostringstream msg;
  msg.precision(6);
  msg << "no argument reduction reaches t = " << t << " (|t| = " << std::abs(t)
      << ", |t/(t-1)| = " << std::abs(t) / std::abs(t - 1.0) << ", |1-t| = " << std::abs(1.0 - t)
      << ", cutoff " << ctrl.region_cutoff << ")";
  throw Error(ErrorKind::EvaluationUnreachable, msg.str());
}

/// dF/dt = (alpha beta / gamma) F(alpha+1, beta+1; gamma+1; t).
inline cplx gauss_2f1_derivative(const HypParams& p, cplx t, const SeriesControl& ctrl = {}) {
  const cplx a = p.alpha();
  const cplx b = p.beta();
  const cplx c = p.gamma();
  // F is identically 1.
  if (is_integer_close(a) && std::round(a.real()) == 0.0) return 0.0;
  if (is_integer_close(b) && std::round(b.real()) == 0.0) return 0.0;
  if (std::abs(c) <= kIntegerTolerance) {
    throw Error(ErrorKind::DegenerateGamma, "derivative needs gamma away from 0");
  }
  return a * b / c * gauss_2f1(HypParams(a + 1.0, b + 1.0, c + 1.0), t, ctrl);
}

/// d^2F/dt^2, the derivative identity applied twice.
inline cplx gauss_2f1_second_derivative(const HypParams& p, cplx t, const SeriesControl& ctrl = {}) {
  const cplx a = p.alpha();
  const cplx b = p.beta();
  const cplx c = p.gamma();
  if (is_integer_close(a) && std::round(a.real()) == 0.0) return 0.0;
  if (is_integer_close(b) && std::round(b.real()) == 0.0) return 0.0;
  if (std::abs(c) <= kIntegerTolerance) {
    throw Error(ErrorKind::DegenerateGamma, "derivative needs gamma away from 0");
  }
  return a * b / c * gauss_2f1_derivative(HypParams(a + 1.0, b + 1.0, c + 1.0), t, ctrl);
}

}  // namespace papperitz::hypergeom
