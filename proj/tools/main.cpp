#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cll/cli/commands.hpp"

using cll::algebra::Rational;
using namespace cll::cli;

namespace {

// Rationals arrive as text ("1e-9" is accepted too) and stay exact.
std::optional<Rational> rational_arg(const std::string& flag, const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    auto e = text.find_first_of("eE");
    if (e != std::string::npos) {
      Rational m = cll::algebra::parse_rational(text.substr(0, e));
      long x = std::stol(text.substr(e + 1));
      Rational p = 1;
      for (long k = 0; k < (x < 0 ? -x : x); ++k) p *= 10;
      return x < 0 ? Rational(m / p) : Rational(m * p);
    }
    return cll::algebra::parse_rational(text);
  } catch (const std::exception& ex) {
    throw CLI::ValidationError(flag, "not a rational number: " + text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact model checker for CLL formulas over continuous-time Markov chains"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string horizon, epsilon = "1/1000000000", delta = "1/2", format = "human";

  auto common = [&](CLI::App* sub, bool needs_formula) {
    sub->add_option("--model,-m", cfg.model_path, "model file (JSON)")->required(needs_formula);
    auto* f = sub->add_option("--formula,-f", cfg.formula, "formula text or a file holding it");
    if (needs_formula) f->required();
    sub->add_option("--horizon", horizon, "time horizon (rational)");
    sub->add_option("--epsilon", epsilon, "width of printed root intervals")->capture_default_str();
    sub->add_option("--delta", delta, "envelope width for the existence check")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "bisection budget for root comparisons")->capture_default_str();
    sub->add_option("--format", format, "human or structured")
        ->check(CLI::IsMember({"human", "structured"}))
        ->capture_default_str();
    sub->add_flag("--verbose,-v", cfg.verbose, "print the isolation chain / S-sets");
  };

  auto* check = app.add_subcommand("check", "decide whether the trajectory satisfies the formula");
  common(check, true);

  IsolateTarget target;
  std::string level = "0", low = "0", high;
  auto* isolate = app.add_subcommand("isolate", "isolate the real roots of a PEF");
  common(isolate, false);
  isolate->add_option("--state", target.state, "model coordinate (1-based)");
  isolate->add_option("--level", level, "subtracted constant")->capture_default_str();
  isolate->add_option("--pef", target.pef, "function text, e.g. \"e^{it} + e^{-it}\"");
  isolate->add_option("--low", low, "window start")->capture_default_str();
  isolate->add_option("--high", high, "window end (defaults to the horizon)");

  std::string trace_step;
  auto* trace = app.add_subcommand("trace", "symbolic path of the trajectory");
  common(trace, false);
  trace->add_option("--step", trace_step, "sample spacing (default horizon/100, 0 for none)");

  std::string sim_step = "1/10000";
  double threshold = 1e-3;
  auto* simulate = app.add_subcommand("simulate", "compare the exact verdict with a grid oracle");
  common(simulate, true);
  simulate->add_option("--step", sim_step, "grid step")->capture_default_str();
  simulate->add_option("--threshold", threshold, "margin below which disagreement is inconclusive")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    cfg.horizon = rational_arg("--horizon", horizon);
    cfg.epsilon = *rational_arg("--epsilon", epsilon);
    cfg.delta = *rational_arg("--delta", delta);
    cfg.format = format == "structured" ? Format::Structured : Format::Human;
    target.level = *rational_arg("--level", level);
    target.low = *rational_arg("--low", low);
    target.high = rational_arg("--high", high);
    if (*isolate && target.state && cfg.model_path.empty()) throw CLI::RequiredError("--model");
    if (*trace && cfg.model_path.empty()) throw CLI::RequiredError("--model");
    if (*simulate) sim_step = rational_arg("--step", sim_step)->get_str();
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }

  if (*check) return cmd_check(cfg, std::cout, std::cerr);
  if (*isolate) return cmd_isolate(cfg, target, std::cout, std::cerr);
  if (*trace) return cmd_trace(cfg, rational_arg("--step", trace_step), std::cout, std::cerr);
  return cmd_simulate(cfg, Rational(sim_step), threshold, std::cout, std::cerr);
}
