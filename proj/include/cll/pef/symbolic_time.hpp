#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "cll/pef/isolate.hpp"

namespace cll::pef {

/// A root of a square-free real PEF together with a shrinking isolating interval.
class RootRef {
 public:
  RootRef(RealPef witness, IsolatingInterval iv) : s_(std::move(witness)), iv_(std::move(iv)) {}
  const RealPef& witness() const { return s_; }
  IsolatingInterval interval() const;
  /// Narrows the interval to width <= w (no-op once exact).
  IsolatingInterval refine(const Rational& w) const;

 private:
  RealPef s_;
  mutable std::mutex mu_;
  mutable IsolatingInterval iv_;
};

/// Exact rational time or a PEF root, plus a rational offset.
class SymbolicTime {
 public:
  SymbolicTime() = default;
  SymbolicTime(Rational q) : q_(std::move(q)) {}
  SymbolicTime(std::shared_ptr<const RootRef> r, Rational offset = 0);

  bool is_exact() const { return !root_ || root_->interval().exact.has_value(); }
  std::optional<Rational> exact() const;
  const std::shared_ptr<const RootRef>& root() const { return root_; }
  const Rational& offset() const { return q_; }

  friend SymbolicTime operator+(const SymbolicTime& t, const Rational& g);
  friend SymbolicTime operator-(const SymbolicTime& t, const Rational& g) { return t + Rational(-g); }

  /// Enclosure [lower, upper] of width <= w.
  std::pair<Rational, Rational> bounds(const Rational& w) const;
  double approx() const;
  std::string to_string() const;

 private:
  std::shared_ptr<const RootRef> root_;
  Rational q_{0};  // value when root_ is null, else the offset
};

enum class Cmp { LT = -1, EQ = 0, GT = 1 };

struct CompareOptions {
  Rational delta{1, 2};
  int budget = 200;  // bisection steps before giving up on separating two roots
};

/// Sign of t1 - t2 - g. Throws UndecidedEquality when two distinct-PEF roots
/// stay inseparable within the budget and no common factor proves equality.
Cmp compare_times(const SymbolicTime& t1, const SymbolicTime& t2, const Rational& g = 0,
                  const CompareOptions& opt = {});

/// Exact sign of f at a symbolic time.
int sign_at(const RealPef& f, const SymbolicTime& t, const CompareOptions& opt = {});

}  // namespace cll::pef
