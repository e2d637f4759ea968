#pragma once

#include "papperitz/numeric.hpp"

namespace papperitz {

struct ZCoord {};
struct TCoord {};

/// Value and first two derivatives at a point. The coordinate tag says which
/// variable the derivatives are taken with respect to; z- and t-jets do not mix.
template <typename Coord>
struct Jet2 {
  cplx y{};
  cplx dy{};
  cplx d2y{};

  friend Jet2 operator+(const Jet2& l, const Jet2& r) { return {l.y + r.y, l.dy + r.dy, l.d2y + r.d2y}; }
  friend Jet2 operator*(cplx s, const Jet2& j) { return {s * j.y, s * j.dy, s * j.d2y}; }
};

using ZJet = Jet2<ZCoord>;
using TJet = Jet2<TCoord>;

}  // namespace papperitz
