#include "cll/algebra/upoly.hpp"

namespace cll::algebra {

std::vector<Integer> primitive_integer_part(const QPoly& p) {
  if (p.is_zero()) return {};
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z;
  z.reserve(p.size());
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    z.push_back(v);
  }
  if (sgn(z.back()) < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

QPoly from_integer(const std::vector<Integer>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& z : coeffs) c.emplace_back(z);
  return QPoly(std::move(c));
}

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    QPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

int variations_at(const std::vector<QPoly>& seq, const Rational& x) {
  int v = 0, prev = 0;
  for (const auto& q : seq) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int variations_at_infinity(const std::vector<QPoly>& seq, bool positive) {
  int v = 0, prev = 0;
  for (const auto& q : seq) {
    if (q.is_zero()) continue;
    int s = sgn(q.lead());
    if (!positive && (q.degree() % 2 == 1)) s = -s;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

int sturm_count(const QPoly& p, const Rational& a, const Rational& b) {
  QPoly sf = p.squarefree_part();
  if (sf.degree() <= 0) return 0;
  auto seq = sturm_sequence(sf);
  return variations_at(seq, a) - variations_at(seq, b);
}

int real_root_count(const QPoly& p) {
  QPoly sf = p.squarefree_part();
  if (sf.degree() <= 0) return 0;
  auto seq = sturm_sequence(sf);
  return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

Rational root_bound(const QPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p[i] / p.lead());
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace cll::algebra
