#pragma once

#include <vector>

#include "cll/algebra/ball.hpp"
#include "cll/algebra/upoly.hpp"

namespace cll::algebra {

/// An isolating ball for one root: the open ball B(center, radius) holds exactly
/// one root of the polynomial. Real roots have im(center) == 0 and real == true.
struct RootBall {
  CQ center;
  Rational radius;
  bool real = false;
};

/// Certified isolation of all complex roots of a square-free QPoly, each ball of
/// radius <= 2^-bits. Deterministic: same input gives the same output order
/// (real roots ascending, then non-real by (re, im)).
std::vector<RootBall> isolate_complex_roots(const QPoly& squarefree, long bits);

}  // namespace cll::algebra
