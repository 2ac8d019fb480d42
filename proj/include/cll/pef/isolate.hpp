#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cll/pef/pef.hpp"

namespace cll::pef {

/// Open interval (low, high) holding exactly one root, or the root itself when
/// it was hit exactly (then low == high == *exact).
struct IsolatingInterval {
  Rational low, high;
  std::optional<Rational> exact;

  static IsolatingInterval point(const Rational& r) { return {r, r, r}; }
  bool contains(const Rational& x) const { return exact ? *exact == x : (low < x && x < high); }
  Rational width() const { return high - low; }
  std::string to_string() const;
};

struct IsolationOptions {
  Rational delta{1, 2};   // envelope width handed to exist_root
  int max_depth = 64;     // derivative chain length cap
};

struct IsolationTrace {
  std::vector<std::string> lines;
};

/// Real roots of f in the open window (B, C), sorted, one per interval.
/// Throws DegenerateInput when f is identically zero.
std::vector<IsolatingInterval> isolate_roots(const Pef& f, const Rational& B, const Rational& C,
                                             const IsolationOptions& opt = {}, IsolationTrace* trace = nullptr);

/// Isolation for a PEF that is already square free (as returned by square_free_part).
std::vector<IsolatingInterval> isolate_square_free(const RealPef& s, const Rational& B, const Rational& C,
                                                   const IsolationOptions& opt = {}, IsolationTrace* trace = nullptr);

/// Narrows iv to width <= width. s must be square free with a single simple root in iv.
IsolatingInterval refine_square_free(const RealPef& s, IsolatingInterval iv, const Rational& width);
/// Same as above, computing the square-free part of f first.
IsolatingInterval refine_isolation(const Pef& f, const IsolatingInterval& iv, const Rational& width);

/// Largest w of the form (C-a)/2^k such that s has no root in (a, a + w]; s(a) may be zero.
Rational clear_right(const RealPef& s, const Rational& a, const Rational& C, const Rational& delta);
/// Same to the left: no root in [c - w, c).
Rational clear_left(const RealPef& s, const Rational& c, const Rational& B, const Rational& delta);

}  // namespace cll::pef
