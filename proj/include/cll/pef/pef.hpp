#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cll/algebra/number_field.hpp"

namespace cll::pef {

using algebra::AlgebraicNumber;
using algebra::AlgPoly;
using algebra::Ball;
using algebra::FieldElem;
using algebra::FieldPtr;
using algebra::Integer;
using algebra::pow2;
using algebra::KPoly;
using algebra::QPoly;
using algebra::Rational;

/// coeff(t) * e^{exponent * t}
struct Term {
  KPoly coeff;
  FieldElem exponent;
};

/// Polynomial-exponential function sum_k f_k(t) e^{lambda_k t}. All coefficients
/// and exponents live in one number field; exponents are pairwise distinct and
/// no coefficient polynomial is zero.
class Pef {
 public:
  Pef() : Pef(algebra::NumberField::rationals()) {}
  explicit Pef(FieldPtr K) : K_(std::move(K)) {}
  Pef(FieldPtr K, std::vector<Term> terms);

  static Pef constant(const FieldElem& c, FieldPtr K = algebra::NumberField::rationals());
  /// coeff(t) e^{exponent t}
  static Pef term(const KPoly& coeff, const FieldElem& exponent, FieldPtr K);
  static Pef exp(const FieldElem& exponent, FieldPtr K) { return term(KPoly{FieldElem(1)}, exponent, std::move(K)); }
  static Pef polynomial(const QPoly& p);
  /// The identity function t.
  static Pef t();

  const FieldPtr& field() const { return K_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Power(f): the exponent set.
  std::vector<FieldElem> power() const;
  bool has_exponent(const FieldElem& e) const;
  /// Coefficient polynomial for exponent e (zero if absent).
  KPoly coeff_of(const FieldElem& e) const;
  int degree() const;
  /// True when f is a single polynomial with exponent 0.
  bool is_polynomial() const;

  friend Pef operator+(const Pef& a, const Pef& b);
  friend Pef operator-(const Pef& a, const Pef& b);
  friend Pef operator-(const Pef& a);
  friend Pef operator*(const Pef& a, const Pef& b);
  friend Pef operator*(const Pef& a, const FieldElem& s);
  friend bool operator==(const Pef& a, const Pef& b);

  Pef derivative() const;
  Pef conj() const;
  /// Exact check of conjugate closure (f(t) real for real t).
  bool is_real() const;
  /// f(t) e^{c t}
  Pef shift_exponent(const FieldElem& c) const;
  /// Coefficient values p_k(t) in K, aligned with terms().
  std::vector<FieldElem> coeff_values(const Rational& t) const;
  /// f(0) exactly.
  FieldElem value_at_zero() const;
  /// Enclosure of f(t) with radius <= 2^-bits.
  Ball eval_ball(const Rational& t, long bits) const;
  /// Upper bound on |f| over [a, b].
  Rational sup_abs(const Rational& a, const Rational& b) const;

  /// The same function with algebraic-number coefficients and exponents.
  std::vector<std::pair<AlgPoly, AlgebraicNumber>> algebraic_terms() const;
  std::string to_string() const;

 private:
  void normalize();
  FieldPtr K_;
  std::vector<Term> terms_;
};

Pef pef_add(const Pef& f, const Pef& g);
Pef pef_mul(const Pef& f, const Pef& g);
Pef pef_derivative(const Pef& f);

/// A real-valued function that the existence check and the comparisons can sample.
class RealFunction {
 public:
  virtual ~RealFunction() = default;
  /// Enclosure with radius <= 2^-bits (imaginary part is rounding noise).
  virtual Ball eval(const Rational& t, long bits) const = 0;
  /// Exact sign at a rational point.
  virtual int sign_at(const Rational& t) const = 0;
  virtual Rational sup_abs(const Rational& a, const Rational& b) const = 0;
  /// Lipschitz constant on [a, b].
  virtual Rational lipschitz(const Rational& a, const Rational& b) const = 0;
  virtual std::string describe() const = 0;
};

/// PEF that is real on the real line (conjugate-closed).
class RealPef : public RealFunction {
 public:
  RealPef() = default;
  /// Throws PreconditionViolation unless f is conjugate-closed.
  explicit RealPef(Pef f);
  const Pef& pef() const { return f_; }

  Ball eval(const Rational& t, long bits) const override { return f_.eval_ball(t, bits); }
  int sign_at(const Rational& t) const override;
  Rational sup_abs(const Rational& a, const Rational& b) const override { return f_.sup_abs(a, b); }
  Rational lipschitz(const Rational& a, const Rational& b) const override;
  std::string describe() const override { return f_.to_string(); }

 private:
  Pef f_;
};

/// t -> base(t + g)
class ShiftedPef : public RealFunction {
 public:
  ShiftedPef(RealPef base, Rational g) : base_(std::move(base)), g_(std::move(g)) {}
  const RealPef& base() const { return base_; }
  const Rational& shift() const { return g_; }

  Ball eval(const Rational& t, long bits) const override { return base_.eval(t + g_, bits); }
  int sign_at(const Rational& t) const override { return base_.sign_at(t + g_); }
  Rational sup_abs(const Rational& a, const Rational& b) const override { return base_.sup_abs(a + g_, b + g_); }
  Rational lipschitz(const Rational& a, const Rational& b) const override { return base_.lipschitz(a + g_, b + g_); }
  std::string describe() const override;

 private:
  RealPef base_;
  Rational g_;
};

/// t -> a(t)^2 + b(t)^2
class SquareSum : public RealFunction {
 public:
  SquareSum(std::shared_ptr<const RealFunction> a, std::shared_ptr<const RealFunction> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  Ball eval(const Rational& t, long bits) const override;
  int sign_at(const Rational& t) const override;
  Rational sup_abs(const Rational& a, const Rational& b) const override;
  Rational lipschitz(const Rational& a, const Rational& b) const override;
  std::string describe() const override;

 private:
  std::shared_ptr<const RealFunction> a_, b_;
};

/// q with |f(t) - q| < eps.
Rational pef_eval_approx(const RealFunction& f, const Rational& t, const Rational& eps);
/// Exact sign of f(t): -1, 0, +1.
int pef_sign_at(const RealFunction& f, const Rational& t);
Rational lipschitz_bound(const RealFunction& f, const Rational& a, const Rational& b);

/// Upper bound on e^{x} for a rational x.
Rational exp_upper(const Rational& x);

}  // namespace cll::pef
