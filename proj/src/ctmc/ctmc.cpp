#include "cll/ctmc/ctmc.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

namespace cll::ctmc {

using algebra::FieldElem;
using algebra::KPoly;
using pef::Pef;

std::string format_rational(const Rational& q) {
  algebra::Integer den = q.get_den();
  int twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1 || q.get_den() == 1) return algebra::to_string(q);
  const int digits = std::max(twos, fives);
  algebra::Integer scaled = q.get_num() * algebra::Integer(algebra::pow(Rational(10), digits)) / q.get_den();
  std::string s = algebra::Integer(abs(scaled)).get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (sgn(q) < 0 ? "-" : "") + s;
}

bool ProbInterval::contains(const Rational& p) const {
  bool lo = low_closed ? low <= p : low < p;
  bool hi = high_closed ? p <= high : p < high;
  return lo && hi;
}

bool ProbInterval::empty() const {
  if (low > high) return true;
  return low == high && !(low_closed && high_closed);
}

std::string ProbInterval::to_string() const {
  return std::string(low_closed ? "[" : "(") + format_rational(low) + "," + format_rational(high) + (high_closed ? "]" : ")");
}

bool operator<(const ProbInterval& a, const ProbInterval& b) {
  if (a.low != b.low) return a.low < b.low;
  if (a.high != b.high) return a.high < b.high;
  if (a.low_closed != b.low_closed) return a.low_closed;
  return a.high_closed < b.high_closed;
}

std::string Atom::to_string() const { return "<" + std::to_string(state) + "," + interval.to_string() + ">"; }

bool operator<(const Atom& a, const Atom& b) {
  if (a.state != b.state) return a.state < b.state;
  return a.interval < b.interval;
}

std::vector<Diagnostic> validate(const CTMC& chain) {
  std::vector<Diagnostic> out;
  const auto& Q = chain.Q;
  if (Q.rows() == 0) out.push_back({"Q", "matrix is empty"});
  if (Q.rows() != Q.cols()) {
    out.push_back({"Q", "matrix is not square"});
    return out;
  }
  if (!chain.states.empty() && chain.states.size() != Q.rows())
    out.push_back({"states", "expected " + std::to_string(Q.rows()) + " names, got " + std::to_string(chain.states.size())});
  for (std::size_t i = 0; i < Q.rows(); ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < Q.cols(); ++j) {
      sum += Q(i, j);
      if (i != j && sgn(Q(i, j)) < 0)
        out.push_back({"Q[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]",
                       "negative off-diagonal rate " + format_rational(Q(i, j))});
    }
    if (sgn(sum) != 0) out.push_back({"Q row " + std::to_string(i + 1), "row " + std::to_string(i + 1) + " sums to " + algebra::to_string(sum)});
  }
  return out;
}

std::vector<Diagnostic> validate(const SymbolizedCTMC& model) {
  auto out = validate(model.chain);
  if (model.intervals.empty()) out.push_back({"intervals", "interval list is empty"});
  for (std::size_t k = 0; k < model.intervals.size(); ++k) {
    const auto& I = model.intervals[k];
    const std::string where = "interval " + std::to_string(k + 1);
    if (sgn(I.low) < 0 || I.high > 1) out.push_back({where, I.to_string() + " is not inside [0,1]"});
    if (I.empty()) out.push_back({where, I.to_string() + " is empty"});
  }
  return out;
}

std::vector<Diagnostic> validate_distribution(const Distribution& mu, std::size_t d) {
  std::vector<Diagnostic> out;
  if (mu.size() != d) {
    out.push_back({"initial", "expected " + std::to_string(d) + " entries, got " + std::to_string(mu.size())});
    return out;
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < d; ++i) {
    sum += mu[i];
    if (sgn(mu[i]) < 0 || mu[i] > 1) out.push_back({"initial[" + std::to_string(i + 1) + "]", format_rational(mu[i]) + " is not a probability"});
  }
  if (sum != 1) out.push_back({"initial", "entries sum to " + algebra::to_string(sum)});
  return out;
}

std::vector<Atom> symbolize(const Distribution& mu, const std::vector<ProbInterval>& intervals) {
  std::vector<Atom> out;
  for (std::size_t j = 0; j < mu.size(); ++j)
    for (const auto& I : intervals)
      if (I.contains(mu[j])) out.push_back({static_cast<int>(j + 1), I});
  return out;
}

namespace {

void require_valid(const CTMC& chain, const Distribution& mu) {
  auto d = validate(chain);
  auto e = validate_distribution(mu, chain.size());
  d.insert(d.end(), e.begin(), e.end());
  if (!d.empty()) throw PreconditionViolation("invalid model: " + d.front().to_string());
}

}  // namespace

Trajectory::Trajectory(const CTMC& chain, const Distribution& mu) {
  require_valid(chain, mu);
  const std::size_t n = chain.size();
  jordan_ = algebra::jordan_decompose_field(chain.Q);
  const auto& K = jordan_.K;
  const FieldElem zero = algebra::in_field(K, FieldElem(0));
  // u^T = mu^T Pinv
  std::vector<FieldElem> u(n, zero);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      if (sgn(mu[r]) != 0) u[c] = u[c] + jordan_.Pinv(r, c) * FieldElem(mu[r]);
  std::vector<Rational> inv_fact{1};
  for (std::size_t k = 1; k <= n; ++k) inv_fact.push_back(inv_fact.back() / Rational(static_cast<long>(k)));

  for (std::size_t i = 0; i < n; ++i) {
    Pef f(K);
    for (const auto& b : jordan_.blocks) {
      // sum over c >= r in the block of u_r P_{c,i} t^{c-r}/(c-r)!
      std::vector<FieldElem> coeff(static_cast<std::size_t>(b.size), zero);
      for (int c = 0; c < b.size; ++c) {
        const FieldElem& pci = jordan_.P(static_cast<std::size_t>(b.offset + c), i);
        if (pci.is_zero()) continue;
        for (int r = 0; r <= c; ++r)
          coeff[static_cast<std::size_t>(c - r)] =
              coeff[static_cast<std::size_t>(c - r)] + u[static_cast<std::size_t>(b.offset + r)] * pci * FieldElem(inv_fact[static_cast<std::size_t>(c - r)]);
      }
      f = f + Pef::term(KPoly(std::move(coeff)), b.eigenvalue, K);
    }
    f_.emplace_back(std::move(f));
  }
}

pef::RealPef trajectory_pef(const CTMC& chain, const Distribution& mu, int i) {
  if (i < 1 || static_cast<std::size_t>(i) > chain.size()) throw PreconditionViolation("state index out of range");
  return Trajectory(chain, mu).coord(i);
}

namespace {

class MVec {
 public:
  MVec(std::size_t n, long prec) : v_(n) {
    for (auto& x : v_) mpfr_init2(x, prec);
  }
  ~MVec() {
    for (auto& x : v_) mpfr_clear(x);
  }
  MVec(const MVec&) = delete;
  MVec& operator=(const MVec&) = delete;
  mpfr_t& operator[](std::size_t i) { return v_[i]; }

 private:
  std::vector<mpfr_t> v_;
};

Rational to_rational(const mpfr_t x) {
  algebra::Integer m;
  long e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  return Rational(m) * algebra::pow2(e);
}

// mu^T e^{Qt} at working precision prec
std::vector<Rational> expm_row(const CTMC& chain, const Distribution& mu, const Rational& t, long prec) {
  const std::size_t n = chain.size();
  Rational norm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) row += abs(chain.Q(i, j));
    norm = std::max(norm, row);
  }
  norm *= t;
  long s = 0;
  while (norm > Rational(1, 2)) {
    norm /= 2;
    ++s;
  }
  // A = Q t / 2^s
  MVec A(n * n, prec), E(n * n, prec), T(n * n, prec), tmp(n * n, prec);
  mpq_class scale = t * algebra::pow2(-s);
  for (std::size_t k = 0; k < n * n; ++k) {
    mpq_class a = chain.Q(k / n, k % n) * scale;
    mpfr_set_q(A[k], a.get_mpq_t(), MPFR_RNDN);
    mpfr_set_ui(E[k], k / n == k % n ? 1 : 0, MPFR_RNDN);
    mpfr_set(T[k], E[k], MPFR_RNDN);
  }
  mpfr_t acc;
  mpfr_init2(acc, prec);
  auto matmul = [&](MVec& out, MVec& x, MVec& y) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mpfr_set_ui(acc, 0, MPFR_RNDN);
        for (std::size_t k = 0; k < n; ++k) mpfr_fma(acc, x[i * n + k], y[k * n + j], acc, MPFR_RNDN);
        mpfr_set(out[i * n + j], acc, MPFR_RNDN);
      }
  };
  // Taylor with ||A|| <= 1/2: term k is below 2^-k
  for (long k = 1; k <= prec + 2; ++k) {
    matmul(tmp, T, A);
    for (std::size_t q = 0; q < n * n; ++q) {
      mpfr_div_si(T[q], tmp[q], k, MPFR_RNDN);
      mpfr_add(E[q], E[q], T[q], MPFR_RNDN);
    }
    bool small = true;
    for (std::size_t q = 0; q < n * n && small; ++q)
      small = mpfr_zero_p(T[q]) || mpfr_get_exp(T[q]) < -(prec + 4);
    if (small) break;
  }
  for (long i = 0; i < s; ++i) {
    matmul(tmp, E, E);
    for (std::size_t q = 0; q < n * n; ++q) mpfr_set(E[q], tmp[q], MPFR_RNDN);
  }
  MVec m(n, prec);
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class x = mu[i];
    mpfr_set_q(m[i], x.get_mpq_t(), MPFR_RNDN);
  }
  std::vector<Rational> out;
  for (std::size_t j = 0; j < n; ++j) {
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    for (std::size_t i = 0; i < n; ++i) mpfr_fma(acc, m[i], E[i * n + j], acc, MPFR_RNDN);
    out.push_back(to_rational(acc));
  }
  mpfr_clear(acc);
  return out;
}

}  // namespace

std::vector<Rational> numeric_distribution(const CTMC& chain, const Distribution& mu, const Rational& t,
                                           const Rational& eps) {
  require_valid(chain, mu);
  if (sgn(t) < 0 || sgn(eps) <= 0) throw PreconditionViolation("numeric_distribution needs t >= 0 and eps > 0");
  long prec = std::max<long>(64, 16 - algebra::ilog2(eps));
  std::vector<Rational> prev = expm_row(chain, mu, t, prec);
  for (;;) {
    prec *= 2;
    std::vector<Rational> next = expm_row(chain, mu, t, prec);
    Rational diff = 0;
    for (std::size_t i = 0; i < next.size(); ++i) diff = std::max(diff, Rational(abs(next[i] - prev[i])));
    if (diff < eps / 8) return next;
    prev = std::move(next);
    if (prec > (1L << 16)) throw Error("numeric_distribution did not converge");
  }
}

}  // namespace cll::ctmc
