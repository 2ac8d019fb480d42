#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cll {

// Error hierarchy shared by all modules.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct DegenerateInput : Error {
  using Error::Error;
};
struct PreconditionViolation : Error {
  using Error::Error;
};
struct UndecidedEquality : Error {
  using Error::Error;
};

}  // namespace cll

namespace cll::algebra {

using Integer = mpz_class;
/// Exact rational; mpq_class keeps values canonical (lowest terms, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "3", "-1/40", "0.025", "1e-3", "-2.5e2" exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// 2^e for any integer e.
Rational pow2(long e);

/// Rounds q down to a multiple of 2^-bits.
Rational round_down(const Rational& q, long bits);

/// Smallest dyadic >= sqrt(q) with denominator 2^bits (q >= 0).
Rational sqrt_upper(const Rational& q, long bits = 64);

/// floor(log2(|q|)) for q != 0.
long ilog2(const Rational& q);

Rational pow(const Rational& q, unsigned long e);

double to_double(const Rational& q);

}  // namespace cll::algebra
