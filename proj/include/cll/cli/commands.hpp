#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cll/algebra/rational.hpp"

namespace cll::cli {

using algebra::Rational;

enum class Format { Human, Structured };

/// Exit statuses shared by all subcommands.
enum Exit : int {
  kOk = 0,
  kDisagreement = 1,  // simulate: exact and oracle verdicts differ outside the margin
  kInvalid = 2,       // unreadable model, validation or parse error
  kUndecided = 3,     // a root comparison ran out of budget
  kInternal = 4,
};

struct RunConfig {
  std::string model_path;
  std::string formula;  // text, or the path of a file holding it
  std::optional<Rational> horizon;
  Rational epsilon{1, 1000000000};
  Rational delta{1, 2};
  int budget = 200;
  Format format = Format::Human;
  bool verbose = false;
};

struct IsolateTarget {
  std::optional<int> state;  // model coordinate, 1-based
  Rational level{0};
  std::string pef;           // raw function text when no state is given
  Rational low{0};
  std::optional<Rational> high;
};

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_isolate(const RunConfig& cfg, const IsolateTarget& target, std::ostream& out, std::ostream& err);
/// step: sample spacing (horizon / 100 when absent; 0 disables samples).
int cmd_trace(const RunConfig& cfg, const std::optional<Rational>& step, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, const Rational& step, double threshold, std::ostream& out,
                 std::ostream& err);

}  // namespace cll::cli
