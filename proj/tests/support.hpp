#pragma once

// Random draws shared by the unit and acceptance suites.

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "papperitz/equation.hpp"
#include "papperitz/oracle.hpp"

namespace papperitz::testing {

inline cplx uniform_complex(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double re = u(rng);
  return {re, u(rng)};
}

inline EquationParams random_params(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  EquationParams p;
  p.a = uniform_complex(rng, lo, hi);
  p.b = uniform_complex(rng, lo, hi);
  p.c = uniform_complex(rng, lo, hi);
  return p;
}

inline DerivedParams random_generic(std::mt19937_64& rng) {
  for (;;) {
    const DerivedParams d = derive_params(random_params(rng));
    if (d.degeneracy == DegeneracyClass::Generic) return d;
  }
}

struct BasisPoint {
  cplx z;
  ZJet first;
  ZJet second;
};

/// A point in [-3,3]^2 (away from +-i) where both basis jets evaluate, or
/// nothing if the draw lands outside every argument reduction.
inline std::optional<BasisPoint> try_basis_point(const DerivedParams& d, std::mt19937_64& rng) {
  const cplx z = uniform_complex(rng, -3.0, 3.0);
  if (std::abs(z - kI) < 0.1 || std::abs(z + kI) < 0.1) return std::nullopt;
  try {
    return BasisPoint{z, eval_basis(d, Basis::First, z), eval_basis(d, Basis::Second, z)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EvaluationUnreachable || e.kind() == ErrorKind::OnBranchCut) return std::nullopt;
    throw;
  }
}

inline std::vector<BasisPoint> basis_points(const DerivedParams& d, std::mt19937_64& rng, int count) {
  std::vector<BasisPoint> out;
  while (static_cast<int>(out.size()) < count) {
    if (auto bp = try_basis_point(d, rng)) out.push_back(*bp);
  }
  return out;
}

inline double scaled_residual(const EquationParams& p, const ZJet& jet, cplx z) {
  return std::abs(oracle::residual_z(p, jet, z)) / oracle::residual_scale(jet, z);
}

}  // namespace papperitz::testing
