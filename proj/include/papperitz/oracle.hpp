#pragma once

// Independent checks for the closed form: equation residuals and a
// complex-path Runge-Kutta integrator that only ever looks at the ODE
// coefficients.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <vector>

#include "papperitz/equation.hpp"
#include "papperitz/error.hpp"
#include "papperitz/hypergeom.hpp"
#include "papperitz/jet.hpp"
#include "papperitz/numeric.hpp"

namespace papperitz::oracle {

/// (1+z^2)^2 y'' + 2az(1+z^2) y' + 4(b+cz) y
inline cplx residual_z(const EquationParams& p, const ZJet& jet, cplx z) {
  const cplx q = 1.0 + z * z;
  return q * q * jet.d2y + 2.0 * p.a * z * q * jet.dy + 4.0 * (p.b + p.c * z) * jet.y;
}

/// t^2(1-t) y'' + t[a - (2-a)t] y' + [(b-ic)t - (b+ic)] y
inline cplx residual_t(const EquationParams& p, const TJet& jet, cplx t) {
  return t * t * (1.0 - t) * jet.d2y + t * (p.a - (2.0 - p.a) * t) * jet.dy +
         ((p.b - kI * p.c) * t - (p.b + kI * p.c)) * jet.y;
}

/// Scale that makes residual_z comparable across points.
inline double residual_scale(const ZJet& jet, cplx z) {
  const double q = 1.0 + std::norm(z);
  return q * q * (std::abs(jet.y) + std::abs(jet.dy) + std::abs(jet.d2y));
}

/// y'' solved from the equation itself.
inline cplx second_derivative(const EquationParams& p, cplx z, cplx y, cplx dy) {
  const cplx q = 1.0 + z * z;
  return -(2.0 * p.a * z * q * dy + 4.0 * (p.b + p.c * z) * y) / (q * q);
}

/// Distance from point x to the closed segment [p0, p1].
inline double segment_distance(cplx p0, cplx p1, cplx x) {
  const cplx d = p1 - p0;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(x - p0);
  const double s = std::clamp(((x - p0) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(x - (p0 + s * d));
}

struct PathSpec {
  std::vector<cplx> waypoints;
  double min_singularity_distance = 0.1;

  void validate() const {
    if (waypoints.size() < 2) throw Error(ErrorKind::InvalidArgument, "a path needs at least two waypoints");
    for (cplx w : waypoints) {
      if (!is_finite(w)) throw Error(ErrorKind::InvalidArgument, "waypoints must be finite");
    }
    for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) {
      for (cplx sing : {kI, -kI}) {
        const double dist = segment_distance(waypoints[k], waypoints[k + 1], sing);
        if (dist < min_singularity_distance) {
          std::ostringstream msg;
          msg << "segment " << k << " passes within " << dist << " of the singular point " << sing;
          throw Error(ErrorKind::PathTooCloseToSingularity, msg.str());
        }
      }
    }
  }
};

struct IntegrationControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 1'000'000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
    if (max_steps < 1) throw Error(ErrorKind::InvalidArgument, "max_steps must be >= 1");
  }
};

struct PathSample {
  cplx z;
  cplx y;
  cplx dy;
};

/// Called with the z-jet (y'' from the equation) after every accepted step.
using StepObserver = std::function<void(cplx z, const ZJet&)>;

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri5 {
  static constexpr std::array<double, 7> c = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static constexpr std::array<std::array<double, 6>, 7> a = {{
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
  }};
  // Fifth-order weights minus embedded fourth-order weights.
  static constexpr std::array<double, 7> e = {71.0 / 57600,      0.0,         -71.0 / 16695, 71.0 / 1920,
                                              -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
};

using State = std::array<cplx, 2>;

inline double max_component(const State& s) {
  double m = 0.0;
  for (cplx x : s) m = std::max({m, std::abs(x.real()), std::abs(x.imag())});
  return m;
}

}  // namespace detail

/// Integrates y'' = -[2az(1+z^2) y' + 4(b+cz) y]/(1+z^2)^2 along the polyline,
/// each segment parameterized by arc length. Returns one sample per waypoint,
/// the first being the initial data.
inline std::vector<PathSample> integrate_ivp(const EquationParams& p, const PathSpec& path, cplx y0, cplx dy0,
                                             const IntegrationControl& ctrl = {},
                                             const StepObserver& observer = {}) {
  p.validate();
  path.validate();
  ctrl.validate();
  using detail::Dopri5;
  using detail::State;

  std::vector<PathSample> samples;
  samples.push_back({path.waypoints.front(), y0, dy0});
  State state = {y0, dy0};
  long steps = 0;

  for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
    const cplx z0 = path.waypoints[seg];
    const cplx z1 = path.waypoints[seg + 1];
    const double length = std::abs(z1 - z0);
    if (length == 0.0) {
      samples.push_back({z1, state[0], state[1]});
      continue;
    }
    const cplx dir = (z1 - z0) / length;
    auto rhs = [&](double s, const State& st) -> State {
      const cplx z = z0 + s * dir;
      return {dir * st[1], dir * second_derivative(p, z, st[0], st[1])};
    };

    double s = 0.0;
    double h = std::min(length, 1e-2);
    while (s < length) {
      if (++steps > ctrl.max_steps) {
        throw Error(ErrorKind::StepLimitExceeded, "integration exceeded max_steps = " + std::to_string(ctrl.max_steps));
      }
      const bool last = s + h >= length;
      if (last) h = length - s;

      std::array<State, 7> k;
      k[0] = rhs(s, state);
      State next = state;
      for (std::size_t i = 1; i < 7; ++i) {
        next = state;
        for (std::size_t j = 0; j < i; ++j) {
          next[0] += h * Dopri5::a[i][j] * k[j][0];
          next[1] += h * Dopri5::a[i][j] * k[j][1];
        }
        k[i] = rhs(s + Dopri5::c[i] * h, next);
      }
      // The last stage is evaluated at the fifth-order solution itself.
      State err{};
      for (std::size_t j = 0; j < 7; ++j) {
        err[0] += h * Dopri5::e[j] * k[j][0];
        err[1] += h * Dopri5::e[j] * k[j][1];
      }
      const double tol =
          ctrl.abs_tol + ctrl.rel_tol * std::max(detail::max_component(state), detail::max_component(next));
      const double ratio = detail::max_component(err) / tol;
      if (!std::isfinite(ratio)) {
        throw Error(ErrorKind::StepLimitExceeded, "integration produced a non-finite state");
      }
      const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
      if (ratio <= 1.0) {
        s = last ? length : s + h;
        state = next;
        if (observer) {
          const cplx z = last ? z1 : z0 + s * dir;
          observer(z, ZJet{state[0], state[1], second_derivative(p, z, state[0], state[1])});
        }
        h *= factor;
      } else {
        h *= std::min(factor, 1.0);
      }
    }
    samples.push_back({z1, state[0], state[1]});
  }
  return samples;
}

struct VerifySample {
  cplx z;
  cplx closed_form;
  cplx numeric;
  double abs_err;
};

struct VerifyReport {
  std::vector<VerifySample> samples;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
};

/// Seeds the integrator with the closed-form jet at the first waypoint and
/// compares both sides at every waypoint.
inline VerifyReport compare_closed_numeric(const DerivedParams& d, cplx c1, cplx c2, const PathSpec& path,
                                           const IntegrationControl& ctrl = {},
                                           const hypergeom::SeriesControl& series_ctrl = {}) {
  if (d.degeneracy != DegeneracyClass::Generic) {
    throw Error(ErrorKind::DegenerateBasis,
                "closed form comparison needs a generic basis, got " + std::string(to_string(d.degeneracy)));
  }
  path.validate();
  const ZJet start = eval_solution(d, c1, c2, path.waypoints.front(), series_ctrl);
  const auto numeric = integrate_ivp(d.params, path, start.y, start.dy, ctrl);

  VerifyReport report;
  for (const PathSample& s : numeric) {
    const cplx closed = eval_solution(d, c1, c2, s.z, series_ctrl).y;
    const double abs_err = std::abs(closed - s.y);
    const double rel_err = std::abs(closed) > 0.0 ? abs_err / std::abs(closed) : abs_err;
    report.samples.push_back({s.z, closed, s.y, abs_err});
    report.max_abs_err = std::max(report.max_abs_err, abs_err);
    report.max_rel_err = std::max(report.max_rel_err, rel_err);
  }
  return report;
}

/// Central-difference jet of f at z with step h along the real direction.
template <typename Coord = ZCoord, typename F>
Jet2<Coord> finite_difference_jet(F&& f, cplx z, double h) {
  const cplx fp = f(z + h);
  const cplx f0 = f(z);
  const cplx fm = f(z - h);
  return {f0, (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}

}  // namespace papperitz::oracle
