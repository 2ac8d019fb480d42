#pragma once

#include <map>
#include <string>
#include <vector>

#include "cll/checker/checker.hpp"

namespace cll::cli {

using algebra::Rational;

/// A rational time, or "root of <pef> in (low, high) + offset".
struct TimeRecord {
  bool rational = true;
  Rational value{0};          // rational
  std::string pef;            // root
  Rational low{0}, high{0};  // root
  Rational offset{0};
  friend bool operator==(const TimeRecord&, const TimeRecord&) = default;
};

struct StretchRecord {
  TimeRecord low, high;
  bool low_closed = true, high_closed = false;
  friend bool operator==(const StretchRecord&, const StretchRecord&) = default;
};

struct WitnessRecord {
  std::string leaf;
  std::vector<TimeRecord> times;
  std::vector<StretchRecord> stretches;
  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

struct VerdictRecord {
  bool satisfied = false;
  std::vector<WitnessRecord> witnesses;
  std::map<std::string, std::string> pefs;  // id -> expression
  std::vector<std::string> diagnostics;
  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

/// Short ids p1, p2, ... for root witnesses, collected into a table.
class PefNames {
 public:
  explicit PefNames(std::map<std::string, std::string>& table) : table_(table) {}
  std::string id(const pef::RealPef& f);

 private:
  std::map<std::string, std::string>& table_;
  std::map<std::string, std::string> ids_;
};

/// Root intervals are refined to width <= eps.
TimeRecord record_time(const pef::SymbolicTime& t, const Rational& eps, PefNames& names);

/// Root times are refined to width <= eps first.
VerdictRecord summarize(const checker::Verdict& v, const Rational& eps);

std::string to_string(const TimeRecord& t);
/// Midpoint value.
double approx(const TimeRecord& t);

/// Line-delimited JSON: one "verdict" line, one "witness" line per witnessed
/// leaf, then "pefs" and "diagnostics".
std::string print_structured(const VerdictRecord& v);
/// Inverse of print_structured; lines with other keys are skipped.
VerdictRecord parse_structured(const std::string& text);
std::string print_human(const VerdictRecord& v);

}  // namespace cll::cli
