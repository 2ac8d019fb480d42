#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cll/checker/intervals.hpp"
#include "cll/ctmc/ctmc.hpp"
#include "cll/logic/formula.hpp"
#include "cll/pef/isolate.hpp"

namespace cll::checker {

using ctmc::Atom;
using ctmc::Distribution;
using logic::PathPtr;
using logic::StatePtr;

struct CheckOptions {
  pef::IsolationOptions isolation;
  CompareOptions compare;
};

/// A run through an until chain: switching times s_0 = 0 <= s_1 <= ... <= s_n
/// and the stretches I_k = s_{k-1} + ([0, s_k - s_{k-1}) & T_k) on which
/// Phi_{k-1} has to hold.
struct Witness {
  std::vector<SymbolicTime> times;
  std::vector<SymbolicInterval> stretches;
  std::string to_string() const;
};

struct LeafVerdict {
  PathPtr leaf;
  bool holds = false;
  std::optional<Witness> witness;
  std::vector<IntervalSet> levels;     // state intervals of Phi_0..Phi_n
  std::vector<IntervalSet> reachable;  // switching times reachable at levels 0..n
};

struct Verdict {
  bool satisfied = false;
  std::vector<LeafVerdict> leaves;
  std::vector<std::string> diagnostics;
};

/// Exact checker for one chain and initial distribution. Root sets are cached
/// across formulas.
class Checker {
 public:
  Checker(const ctmc::CTMC& chain, Distribution mu, CheckOptions opt = {});

  const ctmc::Trajectory& trajectory() const { return traj_; }
  const TimeOrder& order() const { return ord_; }
  const Distribution& initial() const { return mu_; }

  /// Roots of f_state(t) - c in (0, T), sorted.
  std::vector<SymbolicTime> crossings(int state, const Rational& c, const Rational& T);
  /// Maximal intervals of [0, T] on which the atom holds.
  IntervalSet atom_intervals(const Atom& a, const Rational& T);
  IntervalSet state_intervals(const logic::CNF& phi, const Rational& T);
  IntervalSet state_intervals(const StatePtr& phi, const Rational& T) { return state_intervals(logic::to_cnf(phi), T); }
  /// mu_t |= phi, by exact sign tests.
  bool holds_at(const StatePtr& phi, const SymbolicTime& t);

  LeafVerdict check_until_chain(const PathPtr& chain);
  /// Until chain or state query.
  LeafVerdict check_leaf(const PathPtr& leaf);
  Verdict check(const PathPtr& phi);
  /// Re-checks a witness against the chain semantics; empty when valid.
  std::vector<std::string> verify_witness(const PathPtr& chain, const Witness& w);

 private:
  struct RootCache {
    Rational horizon;
    std::vector<SymbolicTime> roots;
  };
  int sign_at(int state, const Rational& c, const SymbolicTime& t);
  pef::RealPef offset_pef(int state, const Rational& c) const;

  ctmc::CTMC chain_;
  Distribution mu_;
  CheckOptions opt_;
  ctmc::Trajectory traj_;
  TimeOrder ord_;
  std::map<std::pair<int, Rational>, RootCache> roots_;
};

/// Horizon sup T_1 + ... + sup T_n of an until chain (0 for a state query).
Rational horizon(const PathPtr& leaf);

/// Decides sigma_mu |= phi. Throws PreconditionViolation for atoms outside the
/// model and UndecidedEquality when a root comparison exhausts its budget.
Verdict model_check(const ctmc::SymbolizedCTMC& model, const Distribution& mu, const PathPtr& phi,
                    const CheckOptions& opt = {});

IntervalSet atom_intervals(const ctmc::CTMC& chain, const Distribution& mu, const Atom& a, const Rational& T);
IntervalSet state_intervals(const ctmc::CTMC& chain, const Distribution& mu, const logic::CNF& phi, const Rational& T);

}  // namespace cll::checker
