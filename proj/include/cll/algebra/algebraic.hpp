#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cll/algebra/ball.hpp"
#include "cll/algebra/complex_roots.hpp"
#include "cll/algebra/upoly.hpp"

namespace cll::algebra {

/// Exact complex algebraic number (minpoly, center, radius): the open ball
/// B(center, radius) holds exactly one root of the monic irreducible minpoly.
class AlgebraicNumber {
 public:
  AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
  AlgebraicNumber(const Rational& q);
  AlgebraicNumber(long q) : AlgebraicNumber(Rational(q)) {}
  /// minpoly need not be monic but must be irreducible; the ball must isolate
  /// exactly one of its roots (checked).
  AlgebraicNumber(QPoly minpoly, CQ center, Rational radius);

  /// All complex roots of p (any p != 0), one entry per distinct root.
  static std::vector<AlgebraicNumber> roots_of(const QPoly& p);
  /// The root of an irreducible minpoly nearest to a numeric guess.
  static AlgebraicNumber nearest_root(const QPoly& minpoly, const CQ& guess);

  const QPoly& minpoly() const { return minpoly_; }
  const CQ& center() const { return center_; }
  const Rational& radius() const { return radius_; }
  int degree() const { return minpoly_.degree(); }
  bool is_rational() const { return minpoly_.degree() == 1; }
  /// Value if rational.
  std::optional<Rational> rational_value() const;
  bool is_real() const { return real_; }

  AlgebraicNumber refine(const Rational& eps) const;
  /// Enclosure with radius <= 2^-bits.
  Ball ball(long bits) const;
  AlgebraicNumber conj() const;

  std::string to_string() const;

 private:
  QPoly minpoly_;
  CQ center_;
  Rational radius_;
  bool real_ = true;
};

enum class AlgOp { add, sub, mul, div };

AlgebraicNumber alg_arith(const AlgebraicNumber& x, const AlgebraicNumber& y, AlgOp op);
bool alg_is_zero(const AlgebraicNumber& x);
AlgebraicNumber alg_refine(const AlgebraicNumber& x, const Rational& eps);
AlgebraicNumber alg_conj(const AlgebraicNumber& x);

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber operator-(const AlgebraicNumber& a);
bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
inline bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }
inline bool coeff_is_zero(const AlgebraicNumber& a) { return alg_is_zero(a); }

/// Exact real and imaginary parts.
AlgebraicNumber real_part(const AlgebraicNumber& x);
AlgebraicNumber imag_part(const AlgebraicNumber& x);
/// Sign of a real algebraic number (precondition: x real).
int real_sign(const AlgebraicNumber& x);
/// Lexicographic (Re, Im) comparison, exact.
int compare_re_im(const AlgebraicNumber& a, const AlgebraicNumber& b);

using AlgPoly = UPoly<AlgebraicNumber>;

}  // namespace cll::algebra
