#pragma once

#include <string>
#include <vector>

#include "cll/ctmc/ctmc.hpp"
#include "cll/pef/pef.hpp"

namespace cll::cli {

using algebra::Rational;

/// Invalid model file; every problem found is listed.
struct ModelError : Error {
  std::vector<ctmc::Diagnostic> diagnostics;
  explicit ModelError(std::vector<ctmc::Diagnostic> d);
};

struct Model {
  ctmc::SymbolizedCTMC model;
  ctmc::Distribution initial;
};

/// JSON document with "states", "Q" (rows of rational strings), "initial" and
/// optional "intervals" ({low, high, low_closed, high_closed}).
Model parse_model(const std::string& text);
Model load_model(const std::string& path);

std::string read_file(const std::string& path);

/// Sums of products of rationals, i, t^k and e^{c t} with c complex rational,
/// e.g. "e^{it} + e^{-it}", "3t^2 e^{-t/2} - 1", "exp((1+2i)t)". Throws
/// logic::SyntaxError.
pef::Pef parse_pef(const std::string& text);

}  // namespace cll::cli
