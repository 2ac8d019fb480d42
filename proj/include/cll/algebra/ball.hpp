#pragma once

#include <string>

#include "cll/algebra/rational.hpp"

namespace cll::algebra {

/// Exact complex rational a + bi.
struct CQ {
  Rational re, im;
  CQ() = default;
  CQ(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  CQ(long r) : re(r), im(0) {}

  friend CQ operator+(const CQ& a, const CQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend CQ operator-(const CQ& a, const CQ& b) { return {a.re - b.re, a.im - b.im}; }
  friend CQ operator-(const CQ& a) { return {-a.re, -a.im}; }
  friend CQ operator*(const CQ& a, const CQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CQ operator/(const CQ& a, const CQ& b);
  friend bool operator==(const CQ& a, const CQ& b) { return a.re == b.re && a.im == b.im; }
  Rational norm2() const { return re * re + im * im; }
  CQ conj() const { return {re, -im}; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

inline bool coeff_is_zero(const CQ& z) { return z.is_zero(); }

/// Upper bound on |z|.
Rational abs_upper(const CQ& z, long bits = 64);
/// Lower bound on |z| (0 allowed).
Rational abs_lower(const CQ& z, long bits = 64);

/// Rounds both parts to multiples of 2^-bits, returns the rounding error bound.
CQ round_dyadic(const CQ& z, long bits, Rational* err);

/// Complex ball: all values within rad of mid. Arithmetic is rigorous; prec is the
/// absolute precision (bits) centers are rounded to.
class Ball {
 public:
  Ball() = default;
  Ball(CQ mid, Rational rad, long prec = 64);
  static Ball exact(const Rational& q, long prec = 64) { return Ball(CQ(q), Rational(0), prec); }
  static Ball exact(const CQ& z, long prec = 64) { return Ball(z, Rational(0), prec); }

  const CQ& mid() const { return mid_; }
  const Rational& rad() const { return rad_; }
  long prec() const { return prec_; }

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a);
  friend Ball operator*(const Ball& a, const Ball& b);
  /// Throws DivisionByZero if the divisor ball contains 0.
  friend Ball operator/(const Ball& a, const Ball& b);

  Ball conj() const { return Ball(mid_.conj(), rad_, prec_); }

  bool contains_zero() const;
  /// Real-part bounds.
  Rational re_lower() const { return mid_.re - rad_; }
  Rational re_upper() const { return mid_.re + rad_; }
  Rational im_lower() const { return mid_.im - rad_; }
  Rational im_upper() const { return mid_.im + rad_; }
  Rational abs_upper() const;
  /// Sign of the real part when decided, 0 when the ball straddles 0.
  int re_sign() const;
  int im_sign() const;
  /// Balls a, b certainly disjoint.
  friend bool disjoint(const Ball& a, const Ball& b);
  /// a lies inside b.
  friend bool inside(const Ball& a, const Ball& b);

  std::string to_string() const;

 private:
  void normalize();
  CQ mid_;
  Rational rad_{0};
  long prec_ = 64;
};

Ball exp(const Ball& z);

}  // namespace cll::algebra
