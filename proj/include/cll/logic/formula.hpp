#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cll/ctmc/ctmc.hpp"

namespace cll::logic {

using algebra::Rational;
using ctmc::Atom;
using ctmc::ProbInterval;

struct State;
using StatePtr = std::shared_ptr<const State>;

/// true | atom | !S | S & S (other connectives desugar into these).
struct State {
  enum class Kind { True, Atom, Not, And };
  Kind kind = Kind::True;
  Atom atom;
  StatePtr a, b;

  static StatePtr make_true();
  static StatePtr make_false();
  static StatePtr make_atom(Atom atom);
  static StatePtr make_not(StatePtr x);
  static StatePtr make_and(StatePtr x, StatePtr y);
  static StatePtr make_or(StatePtr x, StatePtr y);
  static StatePtr make_implies(StatePtr x, StatePtr y);
};

/// Bounded rational time window.
struct TimeWindow {
  Rational low{0}, high{0};
  bool low_closed = true, high_closed = true;
  bool contains(const Rational& t) const;
  bool empty() const;
  std::string to_string() const;
  friend bool operator==(const TimeWindow& a, const TimeWindow& b) {
    return a.low == b.low && a.high == b.high && a.low_closed == b.low_closed && a.high_closed == b.high_closed;
  }
};

struct Path;
using PathPtr = std::shared_ptr<const Path>;

/// true | S (state query at time 0) | S0 U^T1 S1 ... U^Tn Sn | !P | P & P
struct Path {
  enum class Kind { True, State, Until, Not, And };
  Kind kind = Kind::True;
  StatePtr state;                                   // State: the query; Until: Phi_0
  std::vector<std::pair<TimeWindow, StatePtr>> steps;  // Until: (T_k, Phi_k)
  PathPtr a, b;

  static PathPtr make_true();
  static PathPtr make_state(StatePtr s);
  static PathPtr make_until(StatePtr phi0, std::vector<std::pair<TimeWindow, StatePtr>> steps);
  static PathPtr make_not(PathPtr x);
  static PathPtr make_and(PathPtr x, PathPtr y);
  static PathPtr make_or(PathPtr x, PathPtr y);
  /// true U^T phi
  static PathPtr eventually(const TimeWindow& w, StatePtr phi);
  /// !(true U^T !phi)
  static PathPtr always(const TimeWindow& w, StatePtr phi);
};

bool equal(const StatePtr& x, const StatePtr& y);
bool equal(const PathPtr& x, const PathPtr& y);

std::string to_string(const StatePtr& s);
std::string to_string(const PathPtr& p);

struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error("syntax error at " + std::to_string(pos) + ": " + msg), position(pos) {}
};

PathPtr parse(const std::string& text);
StatePtr parse_state(const std::string& text);

/// Atoms whose state index is outside 1..d, as messages.
std::vector<std::string> check_bound(const PathPtr& p, std::size_t d);

/// Conjunction of clauses, each a disjunction of atoms. No clauses: true; an
/// empty clause: false.
struct CNF {
  std::vector<std::vector<Atom>> clauses;
  bool is_true() const { return clauses.empty(); }
  bool is_false() const;
  std::string to_string() const;
};

/// The (at most two) atoms covering [0,1] minus the interval.
std::vector<Atom> complement(const Atom& a);
CNF to_cnf(const StatePtr& s);

/// Direct evaluation of a state formula on a distribution.
bool holds(const StatePtr& s, const ctmc::Distribution& mu);

/// Boolean combination over until-chain / state-query leaves, negations at the leaves.
struct PathNF {
  enum class Kind { True, False, Leaf, NotLeaf, And, Or };
  Kind kind = Kind::True;
  PathPtr leaf;
  std::vector<PathNF> children;
  std::string to_string() const;
};

PathNF normalize_path(const PathPtr& p);

}  // namespace cll::logic
