#pragma once

#include <string>
#include <vector>

#include "cll/pef/pef.hpp"

namespace cll::pef {

enum class ExistOutcome { no_root, root, refine };

struct ExistStep {
  Rational delta;
  Rational lipschitz;
  long samples = 0;  // N
  ExistOutcome outcome = ExistOutcome::refine;
};

struct ExistTrace {
  std::vector<ExistStep> steps;
  std::string to_string() const;
};

/// Sample-and-bracket root existence test on [a, b] with envelope width delta.
/// f(a) and f(b) must be nonzero. Throws Error after max_halvings halvings of delta.
bool exist_root(const RealFunction& f, const Rational& a, const Rational& b, const Rational& delta,
                ExistTrace* trace = nullptr, int max_halvings = 64);

}  // namespace cll::pef
