#include "selftest.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "papperitz/equation.hpp"
#include "papperitz/hypergeom.hpp"
#include "papperitz/oracle.hpp"

namespace papperitz::cli {

namespace {

using hypergeom::HypParams;

cplx draw(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double re = u(rng);
  return {re, u(rng)};
}

bool within(cplx lhs, cplx rhs, double tol, double scale) { return std::abs(lhs - rhs) <= tol * scale; }

SuiteResult parameter_identities(std::mt19937_64& rng, int draws) {
  SuiteResult r{"parameter-identities", 0, draws};
  for (int k = 0; k < draws; ++k) {
    const EquationParams p{draw(rng, -2, 2), draw(rng, -2, 2), draw(rng, -2, 2)};
    const DerivedParams d = derive_params(p);
    const cplx om = 1.0 - p.a;
    const cplx bp = p.b + kI * p.c;
    const cplx bm = p.b - kI * p.c;
    const cplx l = d.lambda;
    const bool ok =
        within(l * l - om * l, bp, 1e-12, std::norm(l) + std::abs(om * l) + std::abs(bp)) &&
        within(d.gamma, 2.0 * l + p.a, 1e-12, std::abs(d.gamma) + 2.0 * std::abs(l) + std::abs(p.a)) &&
        within(d.alpha + d.beta, 1.0 + 2.0 * l - p.a,
               1e-12, std::abs(d.alpha) + std::abs(d.beta) + 1.0 + 2.0 * std::abs(l) + std::abs(p.a)) &&
        within(d.alpha * d.beta, l * l + om * l - bm, 1e-12,
               std::abs(d.alpha * d.beta) + std::norm(l) + std::abs(om * l) + std::abs(bm)) &&
        within(d.delta * d.delta, om * om + 4.0 * bp, 1e-12, std::norm(d.delta) + std::norm(om) + 4.0 * std::abs(bp)) &&
        within(d.delta_star * d.delta_star, om * om + 4.0 * bm, 1e-12,
               std::norm(d.delta_star) + std::norm(om) + 4.0 * std::abs(bm));
    r.passed += ok;
  }
  return r;
}

SuiteResult hypergeometric_identities(std::mt19937_64& rng, int draws) {
  SuiteResult r{"hypergeometric-identities", 0, draws};
  std::uniform_real_distribution<double> radius(0.0, 0.6);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  int done = 0;
  while (done < draws) {
    const cplx g = draw(rng, -2, 2);
    if (g.real() < 0.25 && std::abs(g - std::round(g.real())) < 0.25) continue;
    const cplx t = std::polar(radius(rng), angle(rng));
    if (t.real() >= 0.5) continue;
    const cplx a = draw(rng, -2, 2);
    const cplx b = draw(rng, -2, 2);
    ++done;
    try {
      const HypParams p(a, b, g);
      const cplx f = hypergeom::gauss_2f1(p, t);
      const cplx euler = mobius::principal_power(1.0 - t, g - a - b) * hypergeom::gauss_2f1(HypParams(g - a, g - b, g), t);
      const cplx pfaff = mobius::principal_power(1.0 - t, -b) * hypergeom::gauss_2f1(HypParams(g - a, b, g), t / (t - 1.0));
      const double h = 1e-6;
      const cplx fd = (hypergeom::gauss_2f1(p, t + h) - hypergeom::gauss_2f1(p, t - h)) / (2.0 * h);
      const bool ok = rel_diff(f, hypergeom::gauss_2f1(HypParams(b, a, g), t)) <= 1e-13 &&
                      rel_diff(f, euler) <= 1e-12 && rel_diff(f, pfaff) <= 1e-12 &&
                      rel_diff(hypergeom::gauss_2f1_derivative(p, t), fd) <= 1e-6;
      r.passed += ok;
    } catch (const Error&) {
    }
  }
  return r;
}

DerivedParams generic_draw(std::mt19937_64& rng) {
  for (;;) {
    const DerivedParams d = derive_params({draw(rng, -2, 2), draw(rng, -2, 2), draw(rng, -2, 2)});
    if (d.degeneracy == DegeneracyClass::Generic) return d;
  }
}

double scaled_residual(const EquationParams& p, const ZJet& j, cplx z) {
  return std::abs(oracle::residual_z(p, j, z)) / oracle::residual_scale(j, z);
}

SuiteResult closed_form_residuals(std::mt19937_64& rng, int draws, int points) {
  SuiteResult r{"closed-form-residuals", 0, draws * points};
  for (int k = 0; k < draws; ++k) {
    const DerivedParams d = generic_draw(rng);
    int done = 0;
    while (done < points) {
      const cplx z = draw(rng, -3, 3);
      if (std::abs(z - kI) < 0.1 || std::abs(z + kI) < 0.1) continue;
      ZJet y1, y2;
      try {
        y1 = eval_basis(d, Basis::First, z);
        y2 = eval_basis(d, Basis::Second, z);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::EvaluationUnreachable || e.kind() == ErrorKind::OnBranchCut) continue;
        ++done;
        continue;
      }
      ++done;
      r.passed += scaled_residual(d.params, y1, z) <= 1e-8 && scaled_residual(d.params, y2, z) <= 1e-8;
    }
  }
  return r;
}

SuiteResult oracle_agreement(std::mt19937_64& rng, int draws) {
  SuiteResult r{"oracle-agreement", 0, draws};
  const oracle::PathSpec path{{2.0 * kI, cplx(1.0, 2.0), cplx(2.0, 2.0)}};
  for (int k = 0; k < draws; ++k) {
    const DerivedParams d = generic_draw(rng);
    try {
      r.passed += oracle::compare_closed_numeric(d, 1.0, 0.0, path).max_rel_err <= 1e-6;
    } catch (const Error&) {
    }
  }
  return r;
}

SuiteResult elementary_solutions() {
  SuiteResult r{"elementary-solutions", 0, 0};
  const auto check = [&r](bool ok) {
    ++r.total;
    r.passed += ok;
  };
  try {
    const DerivedParams d0 = derive_params({0.0, 0.0, 0.0});
    for (cplx z : {cplx(3.0, 0.0), cplx(-1.0, 2.0), cplx(0.5, 0.5)}) {
      check(std::abs(eval_solution(d0, 2.0 * kI, 0.0, z).y - (z - kI)) <= 1e-10);
    }
    const DerivedParams dh = derive_params({0.5, 0.0, 0.0});
    for (cplx z : {cplx(0.0, 0.5), cplx(2.0, -1.0)}) {
      check(std::abs(eval_basis(dh, Basis::Second, z).y - 1.0) <= 1e-14);
    }
    for (double a : {0.0, 0.3}) {
      for (double pw : {0.5, 1.0, 1.5}) {
        const EquationParams p{a, pw * pw, kI * pw * (a - 1.0)};
        const cplx z{1.5, 0.7};
        const cplx y = std::pow((z + kI) / (z - kI), pw);
        const cplx q = 1.0 + z * z;
        const cplx l = -2.0 * kI * pw / q;
        const ZJet jet{y, y * l, y * (l * l + 4.0 * kI * pw * z / (q * q))};
        check(scaled_residual(p, jet, z) <= 1e-10);
      }
    }
  } catch (const Error&) {
    check(false);
  }
  return r;
}

SuiteResult degeneracy_detection() {
  SuiteResult r{"degeneracy-detection", 0, 3};
  r.passed += derive_params({0.0, -0.25, 0.0}).degeneracy == DegeneracyClass::RepeatedExponent;
  try {
    const DerivedParams d = derive_params({0.0, 0.0, 0.0});
    r.passed += d.degeneracy == DegeneracyClass::Generic && eval_basis(d, Basis::Second, 3.0).y == cplx(1.0, 0.0);
  } catch (const Error&) {
  }
  try {
    fit_ivp(derive_params({0.0, -0.25, 0.0}), 2.0 * kI, 1.0, 0.0);
  } catch (const Error& e) {
    r.passed += e.kind() == ErrorKind::DegenerateWronskian;
  }
  return r;
}

}  // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed, bool quick) {
  std::mt19937_64 rng(seed);
  const int scale = quick ? 10 : 1;
  std::vector<SuiteResult> out;
  out.push_back(parameter_identities(rng, 1000 / scale));
  out.push_back(hypergeometric_identities(rng, 200 / scale));
  out.push_back(closed_form_residuals(rng, 200 / scale, 20));
  out.push_back(oracle_agreement(rng, quick ? 5 : 20));
  out.push_back(elementary_solutions());
  out.push_back(degeneracy_detection());
  return out;
}

}  // namespace papperitz::cli
