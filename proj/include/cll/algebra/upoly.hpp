#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cll/algebra/rational.hpp"

namespace cll::algebra {

inline bool coeff_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool coeff_is_zero(const Integer& z) { return sgn(z) == 0; }

/// Dense univariate polynomial, coefficients stored low degree first.
/// T must be a field (Rational or FieldElem) for division-based routines.
template <class T>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  static UPoly constant(T value) { return UPoly(std::vector<T>{std::move(value)}); }
  /// coeff * x^k
  static UPoly monomial(T coeff, std::size_t k) {
    std::vector<T> c(k + 1, coeff - coeff);
    c[k] = std::move(coeff);
    return UPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const T& lead() const { return c_.back(); }
  const std::vector<T>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_like(); }
  const T& operator[](std::size_t i) const { return c_[i]; }

  template <class X>
  X eval(const X& x) const {
    X acc = x - x;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }
  T operator()(const T& x) const {
    T acc = zero_like();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d;
    d.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(static_cast<long>(i)));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    T inv = T(1) / lead();
    std::vector<T> d;
    d.reserve(c_.size());
    for (const auto& x : c_) d.push_back(x * inv);
    return UPoly(std::move(d));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    const auto& big = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
    const auto& small = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
    std::vector<T> r = big;
    for (std::size_t i = 0; i < small.size(); ++i) r[i] = r[i] + small[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a) {
    std::vector<T> r;
    r.reserve(a.c_.size());
    for (const auto& x : a.c_) r.push_back(-x);
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    T z = a.c_[0] - a.c_[0];
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, z);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const T& s) {
    std::vector<T> r;
    r.reserve(a.c_.size());
    for (const auto& x : a.c_) r.push_back(x * s);
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const T& s, const UPoly& a) { return a * s; }
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!coeff_is_zero(a.c_[i] - b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  /// Euclidean division a = q*b + r.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<T> r = a.c_;
    T z = b.c_[0] - b.c_[0];
    std::vector<T> q(a.c_.size() - b.c_.size() + 1, z);
    T inv = T(1) / b.lead();
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      T f = r[k + db] * inv;
      q[k] = f;
      if (coeff_is_zero(f)) continue;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] = r[k + j] - f * b.c_[j];
    }
    r.resize(db);
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

  /// Monic gcd (zero if both are zero).
  friend UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// p(g(x))
  UPoly compose(const UPoly& g) const {
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + UPoly::constant(*it);
    return acc;
  }

  /// Product of the distinct irreducible factors (monic).
  UPoly squarefree_part() const {
    if (degree() <= 0) return is_zero() ? *this : UPoly::constant(T(1));
    UPoly g = gcd(*this, derivative());
    return (*this / g).monic();
  }

  /// p(-x)
  UPoly reflect() const {
    std::vector<T> r = c_;
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return UPoly(std::move(r));
  }

  /// x^deg p(1/x)
  UPoly reversed() const {
    std::vector<T> r(c_.rbegin(), c_.rend());
    return UPoly(std::move(r));
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (coeff_is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i] << ")";
      if (i >= 1) os << "*" << var;
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

 private:
  T zero_like() const { return c_.empty() ? T(0) : c_[0] - c_[0]; }
  void trim() {
    while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

using QPoly = UPoly<Rational>;

template <class T>
std::ostream& operator<<(std::ostream& os, const UPoly<T>& p) {
  return os << p.to_string();
}

/// Primitive integer polynomial with positive leading coefficient, same roots.
std::vector<Integer> primitive_integer_part(const QPoly& p);
QPoly from_integer(const std::vector<Integer>& coeffs);

/// Number of distinct real roots in (a, b] via Sturm sequence.
int sturm_count(const QPoly& p, const Rational& a, const Rational& b);
/// Number of distinct real roots on the whole line.
int real_root_count(const QPoly& p);
/// Cauchy bound: every complex root has modulus < bound.
Rational root_bound(const QPoly& p);

}  // namespace cll::algebra
