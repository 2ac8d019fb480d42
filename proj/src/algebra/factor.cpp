#include "cll/algebra/factor.hpp"

#include <random>

namespace cll::algebra {

namespace {

// ---- polynomials over Z/p, p a small odd prime ----
using MP = std::vector<long>;

void trim(MP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
long md(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}
long mulmod(long a, long b, long p) {
  return static_cast<long>((static_cast<__int128>(a) * b) % p);
}
long powmod(long a, long e, long p) {
  long r = 1;
  a = md(a, p);
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
long invmod(long a, long p) { return powmod(a, p - 2, p); }

MP mp_sub(const MP& a, const MP& b, long p) {
  MP r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    long x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = md(x - y, p);
  }
  trim(r);
  return r;
}
MP mp_add(const MP& a, const MP& b, long p) {
  MP r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    long x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = md(x + y, p);
  }
  trim(r);
  return r;
}
MP mp_mul(const MP& a, const MP& b, long p) {
  if (a.empty() || b.empty()) return {};
  MP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = md(r[i + j] + mulmod(a[i], b[j], p), p);
  trim(r);
  return r;
}
std::pair<MP, MP> mp_divmod(const MP& a, const MP& b, long p) {
  if (a.size() < b.size()) return {{}, a};
  MP r = a, q(a.size() - b.size() + 1, 0);
  long inv = invmod(b.back(), p);
  std::size_t db = b.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    long f = mulmod(r[k + db], inv, p);
    q[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] = md(r[k + j] - mulmod(f, b[j], p), p);
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}
MP mp_rem(const MP& a, const MP& b, long p) { return mp_divmod(a, b, p).second; }
MP mp_monic(MP a, long p) {
  if (a.empty()) return a;
  long inv = invmod(a.back(), p);
  for (auto& x : a) x = mulmod(x, inv, p);
  return a;
}
MP mp_gcd(MP a, MP b, long p) {
  while (!b.empty()) {
    MP r = mp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(a, p);
}
// s*a + t*b = 1 for coprime a, b
void mp_xgcd(const MP& a, const MP& b, long p, MP& s, MP& t) {
  MP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = mp_divmod(r0, r1, p);
    MP s2 = mp_sub(s0, mp_mul(q, s1, p), p);
    MP t2 = mp_sub(t0, mp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  long inv = invmod(r0.back(), p);
  for (auto& x : s0) x = mulmod(x, inv, p);
  for (auto& x : t0) x = mulmod(x, inv, p);
  s = s0;
  t = t0;
}
MP mp_derivative(const MP& a, long p) {
  MP r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], static_cast<long>(i) % p, p));
  trim(r);
  return r;
}
// base^e mod m with a big exponent
MP mp_powmod(MP base, const Integer& e, const MP& m, long p) {
  MP r{1};
  base = mp_rem(base, m, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mp_rem(mp_mul(r, r, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mp_rem(mp_mul(r, base, p), m, p);
  }
  return r;
}

MP reduce(const std::vector<Integer>& f, long p) {
  MP r;
  r.reserve(f.size());
  for (const auto& c : f) {
    Integer m;
    mpz_fdiv_r_ui(m.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
    r.push_back(m.get_si());
  }
  trim(r);
  return r;
}

// equal-degree splitting of a monic squarefree product of degree-d factors
void equal_degree(const MP& f, int d, long p, std::mt19937_64& rng, std::vector<MP>& out) {
  int n = static_cast<int>(f.size()) - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<long> dist(0, p - 1);
  for (;;) {
    MP a(n, 0);
    for (auto& x : a) x = dist(rng);
    trim(a);
    if (a.size() <= 1) continue;
    MP g = mp_gcd(f, a, p);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree(g, d, p, rng, out);
      equal_degree(mp_divmod(f, g, p).first, d, p, rng, out);
      return;
    }
    MP b = mp_powmod(a, e, f, p);
    b = mp_sub(b, MP{1}, p);
    g = mp_gcd(f, b, p);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree(g, d, p, rng, out);
      equal_degree(mp_divmod(f, g, p).first, d, p, rng, out);
      return;
    }
  }
}

// monic squarefree f mod p -> monic irreducible factors
std::vector<MP> factor_mod_p(MP f, long p) {
  std::vector<MP> out;
  std::mt19937_64 rng(0x5eed);
  MP x{0, 1};
  MP h = x;
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = mp_powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
    MP g = mp_gcd(f, mp_sub(h, x, p), p);
    if (g.size() > 1) {
      equal_degree(g, d, p, rng, out);
      f = mp_divmod(f, g, p).first;
      h = mp_rem(h, f, p);
    }
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

// ---- Hensel lifting over Z/p^k ----
using ZP = std::vector<Integer>;

ZP zp_mul(const ZP& a, const ZP& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZP r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  return r;
}
ZP to_zp(const MP& a) {
  ZP r;
  for (long c : a) r.emplace_back(c);
  return r;
}

// lift F = G0*H0 (mod p), F monic mod p^k, G0 and H0 monic
void hensel_pair(const ZP& F, const MP& G0, const MP& H0, long p, int k, ZP& G, ZP& H) {
  MP s, t;
  mp_xgcd(G0, H0, p, s, t);
  G = to_zp(G0);
  H = to_zp(H0);
  Integer pj = p;
  for (int j = 1; j < k; ++j) {
    Integer pj1 = pj * p;
    ZP prod = zp_mul(G, H, pj1);
    MP e;
    for (std::size_t i = 0; i < std::max(F.size(), prod.size()); ++i) {
      Integer v = (i < F.size() ? F[i] : Integer(0)) - (i < prod.size() ? prod[i] : Integer(0));
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), pj1.get_mpz_t());
      v /= pj;
      e.push_back(v.get_si());
    }
    trim(e);
    auto [q, sigma] = mp_divmod(mp_mul(s, e, p), H0, p);
    MP tau = mp_add(mp_mul(t, e, p), mp_mul(q, G0, p), p);
    for (std::size_t i = 0; i < tau.size(); ++i) G[i] += pj * static_cast<long>(tau[i]);
    for (std::size_t i = 0; i < sigma.size(); ++i) H[i] += pj * static_cast<long>(sigma[i]);
    pj = pj1;
  }
}

void hensel_multi(const ZP& F, const std::vector<MP>& facs, long p, int k, std::vector<ZP>& out) {
  if (facs.size() == 1) {
    out.push_back(F);
    return;
  }
  std::size_t half = facs.size() / 2;
  std::vector<MP> L1(facs.begin(), facs.begin() + static_cast<long>(half));
  std::vector<MP> L2(facs.begin() + static_cast<long>(half), facs.end());
  MP g0{1}, h0{1};
  for (const auto& f : L1) g0 = mp_mul(g0, f, p);
  for (const auto& f : L2) h0 = mp_mul(h0, f, p);
  ZP G, H;
  hensel_pair(F, g0, h0, p, k, G, H);
  hensel_multi(G, L1, p, k, out);
  hensel_multi(H, L2, p, k, out);
}

QPoly symmetric_primitive(const ZP& a, const Integer& m) {
  Integer half = m / 2;
  std::vector<Rational> c;
  for (Integer v : a) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (v > half) v -= m;
    c.emplace_back(v);
  }
  return QPoly(std::move(c));
}

bool divides_over_z(const QPoly& g, const QPoly& f, QPoly& quotient) {
  auto [q, r] = divmod(f, g);
  if (!r.is_zero()) return false;
  for (const auto& c : q.coeffs())
    if (c.get_den() != 1) return false;
  quotient = q;
  return true;
}

const long kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
                             67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
                             139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211};

std::vector<QPoly> zassenhaus(const std::vector<Integer>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {from_integer(f).monic()};
  const Integer lc = f.back();

  long best_p = 0;
  std::vector<MP> best;
  int tried = 0;
  for (long p : kPrimes) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(p));
    if (r == 0) continue;
    MP fp = reduce(f, p);
    if (mp_gcd(fp, mp_derivative(fp, p), p).size() != 1) continue;
    auto facs = factor_mod_p(mp_monic(fp, p), p);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = facs;
    }
    if (best.size() == 1 || ++tried >= 5) break;
  }
  if (best_p == 0) throw Error("no suitable prime for factorization");
  if (best.size() == 1) return {from_integer(f).monic()};

  // coefficient bound for factors of lc*f
  Integer maxc = 0;
  for (const auto& c : f)
    if (abs(c) > maxc) maxc = abs(c);
  Integer bound = maxc * abs(lc) * (n + 1);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n + 1));
  int k = 1;
  Integer m = best_p;
  while (m <= bound) {
    m *= best_p;
    ++k;
  }

  // F = f / lc mod p^k (monic)
  Integer lcinv;
  mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), m.get_mpz_t());
  ZP F;
  for (const auto& c : f) {
    Integer v = c * lcinv;
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    F.push_back(v);
  }
  std::vector<ZP> lifted;
  hensel_multi(F, best, best_p, k, lifted);

  std::vector<QPoly> result;
  QPoly rest = from_integer(f);
  std::vector<ZP> remaining = lifted;
  for (std::size_t s = 1; 2 * s <= remaining.size(); ++s) {
    bool found = true;
    while (found) {
      found = false;
      const std::size_t r = remaining.size();
      if (2 * s > r) break;
      std::vector<std::size_t> idx(s);
      for (std::size_t i = 0; i < s; ++i) idx[i] = i;
      for (;;) {
        Integer rl = primitive_integer_part(rest).back();
        ZP prod{rl};
        for (auto i : idx) prod = zp_mul(prod, remaining[i], m);
        QPoly g = from_integer(primitive_integer_part(symmetric_primitive(prod, m)));
        QPoly quo;
        if (g.degree() > 0 && divides_over_z(g, from_integer(primitive_integer_part(rest)), quo)) {
          result.push_back(g.monic());
          rest = quo;
          std::vector<ZP> keep;
          for (std::size_t i = 0, j = 0; i < r; ++i) {
            if (j < s && idx[j] == i) {
              ++j;
              continue;
            }
            keep.push_back(remaining[i]);
          }
          remaining = std::move(keep);
          found = true;
          break;
        }
        // next combination
        std::size_t i = s;
        while (i > 0 && idx[i - 1] == r - s + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  if (rest.degree() > 0) result.push_back(rest.monic());
  return result;
}

}  // namespace

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() <= 0) return out;
  QPoly f = p.monic();
  QPoly fp = f.derivative();
  QPoly a = gcd(f, fp);
  QPoly b = f / a;
  QPoly c = fp / a;
  QPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    QPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g.monic(), i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

std::vector<QPoly> irreducible_factors(const QPoly& squarefree) {
  if (squarefree.degree() <= 0) return {};
  std::vector<QPoly> out;
  QPoly f = squarefree.monic();
  // strip the factor x separately, keeps f(0) != 0
  if (sgn(f[0]) == 0) {
    out.push_back(QPoly{Rational(0), Rational(1)});
    f = f / QPoly{Rational(0), Rational(1)};
    if (f.degree() <= 0) return out;
  }
  for (auto& g : zassenhaus(primitive_integer_part(f))) out.push_back(std::move(g));
  return out;
}

std::vector<std::pair<QPoly, int>> factor(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  for (const auto& [sf, mult] : squarefree_decomposition(p))
    for (auto& g : irreducible_factors(sf)) out.emplace_back(std::move(g), mult);
  return out;
}

}  // namespace cll::algebra
