#pragma once

#include <map>
#include <string>
#include <vector>

#include "cll/algebra/number_field.hpp"

namespace cll::pef {

/// Sparse multivariate polynomial over a number field; monomials are exponent
/// vectors of fixed length, ordered lexicographically.
class MPoly {
 public:
  using Monomial = std::vector<int>;

  MPoly() = default;
  explicit MPoly(std::size_t nvars) : n_(nvars) {}
  static MPoly constant(std::size_t nvars, const algebra::FieldElem& c);
  static MPoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return n_; }
  const std::map<Monomial, algebra::FieldElem>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  void add_term(const Monomial& m, const algebra::FieldElem& c);

  int degree_in(std::size_t v) const;
  /// Coefficient of v^k as a polynomial not involving v.
  MPoly coeff_in(std::size_t v, int k) const;
  const algebra::FieldElem& lead_coeff() const { return t_.rbegin()->second; }

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const algebra::FieldElem& s);
  friend bool operator==(const MPoly& a, const MPoly& b) { return (a - b).is_zero(); }

  MPoly derivative(std::size_t v) const;
  /// Multiplies by var^k.
  MPoly shift(std::size_t v, int k) const;
  /// Scaled so that the lexicographically leading coefficient is 1.
  MPoly monic() const;
  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::map<Monomial, algebra::FieldElem> t_;
};

/// Exact quotient a / b; throws Error when b does not divide a.
MPoly exact_div(const MPoly& a, const MPoly& b);
/// Monic greatest common divisor.
MPoly gcd(const MPoly& a, const MPoly& b);

}  // namespace cll::pef
