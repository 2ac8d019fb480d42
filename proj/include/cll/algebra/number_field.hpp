#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "cll/algebra/algebraic.hpp"
#include "cll/algebra/matrix.hpp"

namespace cll::algebra {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of K = Q(theta), stored in the power basis 1, theta, ..., theta^{D-1}.
/// A null field means a rational constant; it adapts to whatever field it meets.
class FieldElem {
 public:
  FieldElem() : c_{Rational(0)} {}
  FieldElem(long q) : c_{Rational(q)} {}
  FieldElem(const Rational& q) : c_{q} {}
  FieldElem(FieldPtr K, std::vector<Rational> coords);
  static FieldElem generator(const FieldPtr& K);

  const FieldPtr& field() const { return K_; }
  /// Coordinates in the power basis (size D, or 1 for a bare rational).
  const std::vector<Rational>& coords() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  std::optional<Rational> rational_value() const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  FieldElem inverse() const;

  /// Enclosure of the designated embedding with radius <= 2^-bits.
  Ball ball(long bits) const;
  AlgebraicNumber to_algebraic() const;
  /// Minimal polynomial over Q.
  QPoly minpoly() const;
  /// Complex conjugate; the field must be closed under conjugation.
  FieldElem conj() const;
  bool is_real() const { return *this == conj(); }
  /// Exact signs of real and imaginary parts.
  int re_sign() const;
  int im_sign() const;
  /// (x + conj x)/2 and (x - conj x)/2 (the latter is i*Im x).
  FieldElem re() const;
  FieldElem i_im() const;

  std::string to_string() const;

 private:
  FieldPtr K_;
  std::vector<Rational> c_;
};

inline bool coeff_is_zero(const FieldElem& x) { return x.is_zero(); }
inline std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.to_string(); }

class NumberField {
 public:
  /// theta must be a root of the monic irreducible minpoly.
  NumberField(QPoly minpoly, AlgebraicNumber theta);
  static FieldPtr make(QPoly minpoly, AlgebraicNumber theta);
  /// Q as a degree-1 field.
  static FieldPtr rationals();

  int degree() const { return minpoly_.degree(); }
  const QPoly& minpoly() const { return minpoly_; }
  const AlgebraicNumber& theta() const { return theta_; }

  /// Reduces a coefficient vector modulo the minimal polynomial.
  std::vector<Rational> reduce(std::vector<Rational> c) const;
  /// Balls for theta^0..theta^{D-1} at working precision bits.
  const std::vector<Ball>& power_balls(long bits) const;

  /// Coordinates of conj(theta) (computed lazily when not provided).
  const std::vector<Rational>& conj_theta(const FieldPtr& self) const;
  void set_conj_theta(std::vector<Rational> c) const;

 private:
  QPoly minpoly_;
  AlgebraicNumber theta_;
  mutable std::mutex mu_;
  mutable std::map<long, std::vector<Ball>> powers_;
  mutable std::optional<std::vector<Rational>> conj_theta_;
};

using KPoly = UPoly<FieldElem>;

/// x viewed as an element of K (x must be rational or already in K).
FieldElem in_field(const FieldPtr& K, const FieldElem& x);

/// Lifts a rational polynomial to K[x].
KPoly to_kpoly(const QPoly& p);
/// The multiplication-by-x matrix of an element in the power basis.
RationalMatrix mult_matrix(const FieldElem& x);
/// Determinant of a square rational matrix.
Rational det(RationalMatrix M);
/// Norm_{K/Q}(g) for g in K[x], a polynomial over Q.
QPoly norm(const FieldPtr& K, const KPoly& g);
/// Monic irreducible factors over K of a square-free g (Trager).
std::vector<KPoly> factor_over(const FieldPtr& K, const KPoly& g);
/// Maps p(theta) in K to p(image) in the field of image.
FieldElem substitute(const FieldElem& x, const FieldElem& image);

/// Splitting field of p over Q with all distinct roots of p as elements.
struct SplittingField {
  FieldPtr K;
  std::vector<FieldElem> roots;
};
SplittingField splitting_field(const QPoly& p);

}  // namespace cll::algebra
