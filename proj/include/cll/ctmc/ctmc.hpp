#pragma once

#include <string>
#include <vector>

#include "cll/algebra/jordan.hpp"
#include "cll/pef/pef.hpp"

namespace cll::ctmc {

using algebra::Rational;
using algebra::RationalMatrix;

struct ProbInterval {
  Rational low{0}, high{1};
  bool low_closed = true, high_closed = true;

  bool contains(const Rational& p) const;
  bool empty() const;
  std::string to_string() const;
  friend bool operator==(const ProbInterval& a, const ProbInterval& b) {
    return a.low == b.low && a.high == b.high && a.low_closed == b.low_closed && a.high_closed == b.high_closed;
  }
  friend bool operator<(const ProbInterval& a, const ProbInterval& b);
};

using Distribution = std::vector<Rational>;

struct CTMC {
  std::vector<std::string> states;
  RationalMatrix Q;
  std::size_t size() const { return Q.rows(); }
};

struct SymbolizedCTMC {
  CTMC chain;
  std::vector<ProbInterval> intervals;
};

/// <state, interval>; state is 1-based.
struct Atom {
  int state = 1;
  ProbInterval interval;
  std::string to_string() const;
  friend bool operator==(const Atom& a, const Atom& b) { return a.state == b.state && a.interval == b.interval; }
  friend bool operator<(const Atom& a, const Atom& b);
};

struct Diagnostic {
  std::string where;  // e.g. "Q[1][2]", "interval 3", "initial"
  std::string message;
  std::string to_string() const { return where + ": " + message; }
};

std::vector<Diagnostic> validate(const CTMC& chain);
std::vector<Diagnostic> validate(const SymbolizedCTMC& model);
std::vector<Diagnostic> validate_distribution(const Distribution& mu, std::size_t d);

/// Atoms <j, I> with mu(j) in I, in state-then-interval order.
std::vector<Atom> symbolize(const Distribution& mu, const std::vector<ProbInterval>& intervals);

/// Exact trajectory mu_t^T = mu^T e^{Qt}, one real PEF per state, all over the
/// splitting field of the characteristic polynomial of Q.
class Trajectory {
 public:
  Trajectory(const CTMC& chain, const Distribution& mu);
  const std::vector<pef::RealPef>& coords() const { return f_; }
  /// 1-based.
  const pef::RealPef& coord(int state) const { return f_.at(static_cast<std::size_t>(state - 1)); }
  const algebra::FieldJordan& jordan() const { return jordan_; }

 private:
  algebra::FieldJordan jordan_;
  std::vector<pef::RealPef> f_;
};

/// Coordinate i (1-based) of the trajectory.
pef::RealPef trajectory_pef(const CTMC& chain, const Distribution& mu, int i);

/// mu^T e^{Qt} with every coordinate within eps (MPFR scaling and squaring).
std::vector<Rational> numeric_distribution(const CTMC& chain, const Distribution& mu, const Rational& t,
                                           const Rational& eps);

/// Decimal text when the denominator divides a power of 10, otherwise p/q.
std::string format_rational(const Rational& q);

}  // namespace cll::ctmc
