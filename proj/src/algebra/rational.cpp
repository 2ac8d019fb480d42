#include "cll/algebra/rational.hpp"

#include <cctype>

namespace cll::algebra {

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw Error("invalid rational literal '" + std::string(text) + "'");
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return fail();

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0) return fail();
    std::string d = s.substr(slash + 1);
    if (d.empty() || d[0] == '-' || d[0] == '+') return fail();
    if (den.set_str(d, 10) != 0) return fail();
    if (den == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      if (seen_dot) return fail();
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i]);
      if (seen_dot) ++frac_digits;
    } else {
      return fail();
    }
  }
  if (digits.empty()) return fail();
  long exponent = 0;
  if (i < s.size()) {
    std::string e = s.substr(i + 1);
    if (e.empty()) return fail();
    try {
      std::size_t used = 0;
      exponent = std::stol(e, &used);
      if (used != e.size()) return fail();
    } catch (const std::exception&) {
      return fail();
    }
  }
  Integer mant(digits, 10);
  long scale = exponent - frac_digits;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale >= 0 ? Rational(mant * ten_pow) : Rational(mant, ten_pow);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational pow2(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  return Rational(Integer(1), p);
}

Rational round_down(const Rational& q, long bits) {
  if (q.get_den() == 1) return q;
  Integer scaled_num = q.get_num();
  if (bits >= 0)
    mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), static_cast<unsigned long>(bits));
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den_mpz_t());
  Rational r(fl, Integer(1));
  r *= pow2(-bits);
  r.canonicalize();
  return r;
}

Rational sqrt_upper(const Rational& q, long bits) {
  if (sgn(q) <= 0) return Rational(0);
  // ceil(sqrt(q * 4^bits)) / 2^bits
  Rational scaled = q * pow2(2 * bits);
  Integer c = ceil(scaled);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), c.get_mpz_t());
  if (s * s < c) s += 1;
  Rational r(s);
  r *= pow2(-bits);
  r.canonicalize();
  return r;
}

long ilog2(const Rational& q) {
  Integer n = abs(q.get_num());
  const Integer& d = q.get_den();
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  // adjust so that 2^e <= |q| < 2^{e+1}
  Rational a = abs(q);
  while (pow2(e) > a) --e;
  while (pow2(e + 1) <= a) ++e;
  return e;
}

Rational pow(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace cll::algebra
