#pragma once

#include <string>
#include <vector>

#include "cll/logic/formula.hpp"
#include "cll/pef/symbolic_time.hpp"

namespace cll::checker {

using algebra::Rational;
using logic::TimeWindow;
using pef::CompareOptions;
using pef::SymbolicTime;

/// Interval with exact symbolic endpoints.
struct SymbolicInterval {
  SymbolicTime low, high;
  bool low_closed = true, high_closed = true;

  static SymbolicInterval closed(SymbolicTime a, SymbolicTime b) { return {std::move(a), std::move(b), true, true}; }
  static SymbolicInterval point(const SymbolicTime& a) { return {a, a, true, true}; }
  std::string to_string() const;
};

/// Sorted, pairwise disjoint, maximal intervals.
struct IntervalSet {
  std::vector<SymbolicInterval> intervals;
  bool empty() const { return intervals.empty(); }
  std::string to_string() const;
};

/// Exact order on symbolic times with a shared refinement budget.
class TimeOrder {
 public:
  explicit TimeOrder(CompareOptions opt = {}) : opt_(std::move(opt)) {}
  /// Sign of a - b - g.
  int cmp(const SymbolicTime& a, const SymbolicTime& b, const Rational& g = 0) const;
  const CompareOptions& options() const { return opt_; }

  bool is_empty(const SymbolicInterval& I) const;
  bool contains(const SymbolicInterval& I, const SymbolicTime& t) const;
  bool contains(const IntervalSet& S, const SymbolicTime& t) const;
  /// I is a subset of some member of S.
  bool covered(const SymbolicInterval& I, const IntervalSet& S) const;

  SymbolicInterval intersect(const SymbolicInterval& a, const SymbolicInterval& b) const;
  /// Sorted, with empty pieces dropped and touching pieces merged.
  IntervalSet normalize(std::vector<SymbolicInterval> pieces) const;
  IntervalSet unite(const IntervalSet& a, const IntervalSet& b) const;
  IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) const;

  /// Some point of a nonempty interval: the low end when closed, else the
  /// simplest rational strictly inside (or the high end for a degenerate piece).
  SymbolicTime pick(const SymbolicInterval& I) const;
  /// Simplest rational strictly between a < b.
  Rational rational_between(const SymbolicTime& a, const SymbolicTime& b) const;

 private:
  CompareOptions opt_;
};

/// { x + w : x in I, w in T }
SymbolicInterval minkowski(const SymbolicInterval& I, const TimeWindow& T);
SymbolicInterval shift(const SymbolicInterval& I, const Rational& g);
SymbolicInterval to_symbolic(const TimeWindow& T);

/// Simplest rational (smallest denominator, then numerator) in the open interval (a, b).
Rational simplest_between(const Rational& a, const Rational& b);

}  // namespace cll::checker
