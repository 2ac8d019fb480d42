#pragma once

#include <string>

#include "cll/ctmc/ctmc.hpp"
#include "cll/logic/formula.hpp"

namespace cll::checker {

struct OracleResult {
  bool satisfied = false;
  /// Distance to the nearest near-coincidence of boundary crossings with
  /// window sums (see nearest). Small margins make the verdict unreliable.
  double margin = 0;
  std::size_t grid_points = 0;
  std::string nearest;  // what produced the margin
};

/// Evaluates the formula on the grid t = j * step with a floating-point
/// trajectory. Independent of the exact machinery.
OracleResult grid_check(const ctmc::CTMC& chain, const ctmc::Distribution& mu, const logic::PathPtr& phi,
                        const algebra::Rational& step = algebra::Rational(1, 10000));

}  // namespace cll::checker
