#include "cll/algebra/complex_roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>

namespace cll::algebra {

namespace {

using CLD = std::complex<long double>;

std::vector<CLD> aberth_double(const QPoly& p) {
  const int n = p.degree();
  std::vector<long double> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = static_cast<long double>(to_double(p[i] / p.lead()));
  long double r = 0;
  for (int i = 0; i < n; ++i) r = std::max(r, std::pow(std::fabs(c[i]), 1.0L / (n - i)));
  if (r == 0) r = 1;
  std::vector<CLD> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(r, 2.0L * M_PIl * k / n + 0.4L);
  for (int it = 0; it < 500; ++it) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      CLD v = 0, d = 0;
      for (int j = n; j >= 0; --j) {
        d = d * z[i] + v;
        v = v * z[i] + c[j];
      }
      if (std::abs(v) == 0) continue;
      CLD ratio = v / d;
      CLD s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      CLD step = ratio / (1.0L - ratio * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[i])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

CQ to_cq(const CLD& z) {
  Rational re(static_cast<double>(z.real())), im(static_cast<double>(z.imag()));
  return {re, im};
}

CQ horner(const QPoly& p, const CQ& z) {
  CQ acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * z + CQ(p[i]);
  return acc;
}

// Certificate: returns true and fills balls when every inclusion disk is
// isolated and small enough.
bool certify(const QPoly& monic, const std::vector<CQ>& z, long bits, std::vector<RootBall>& out) {
  const int n = monic.degree();
  std::vector<Rational> rho(n);
  const long sb = bits + 8;
  for (int i = 0; i < n; ++i) {
    CQ num = horner(monic, z[i]);
    Rational den = 1;
    for (int j = 0; j < n; ++j)
      if (j != i) {
        Rational d2 = (z[i] - z[j]).norm2();
        if (sgn(d2) == 0) return false;
        den *= d2;
      }
    Rational w = sqrt_upper(num.norm2() / den, sb);
    rho[i] = w * n;
    if (sgn(rho[i]) == 0) rho[i] = pow2(-sb);
  }
  const Rational target = pow2(-bits);
  for (int i = 0; i < n; ++i)
    if (rho[i] * 2 > target) return false;
  auto apart = [&](const CQ& a, const Rational& ra, const CQ& b, const Rational& rb) {
    Rational s = ra + rb;
    return (a - b).norm2() > s * s;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!apart(z[i], rho[i], z[j], rho[j])) return false;
  out.assign(n, {});
  for (int i = 0; i < n; ++i) {
    RootBall rb;
    rb.center = z[i];
    rb.radius = rho[i] * 2;
    if (abs(z[i].im) <= rho[i]) {
      // mirror disk must not meet any other disk, else undecided
      CQ m = z[i].conj();
      for (int j = 0; j < n; ++j)
        if (j != i && !apart(m, rho[i], z[j], rho[j])) return false;
      rb.real = true;
      rb.center = CQ(z[i].re);
    }
    for (int j = 0; j < n; ++j)
      if (j != i && !apart(rb.center, rb.radius, z[j], rho[j])) return false;
    out[i] = rb;
  }
  return true;
}

std::vector<RootBall> isolate_uncached(const QPoly& p, long bits) {
  const int n = p.degree();
  if (n <= 0) return {};
  QPoly m = p.monic();
  if (n == 1) return {RootBall{CQ(-m[0]), pow2(-bits), true}};

  std::vector<CQ> z;
  for (const auto& w : aberth_double(m)) z.push_back(to_cq(w));
  QPoly dm = m.derivative();
  long prec = std::max<long>(64, bits + 16);
  int stall = 0;
  std::vector<RootBall> out;
  for (int it = 0; it < 2000; ++it) {
    if (certify(m, z, bits, out)) break;
    if (++stall > 6) {
      prec *= 2;
      stall = 0;
      if (prec > (1L << 16)) throw Error("complex root isolation did not converge");
    }
    // one Aberth sweep in rounded rational arithmetic
    for (int i = 0; i < n; ++i) {
      CQ v = horner(m, z[i]);
      if (v.is_zero()) continue;
      CQ d = horner(dm, z[i]);
      CQ s;
      bool clash = false;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        CQ diff = z[i] - z[j];
        if (diff.is_zero()) {
          clash = true;
          break;
        }
        s = s + CQ(1) / diff;
      }
      if (clash) {
        z[i] = z[i] + CQ(pow2(-prec / 2), pow2(-prec / 2));
        continue;
      }
      if (d.is_zero()) {
        z[i] = z[i] + CQ(pow2(-prec / 2));
        continue;
      }
      CQ ratio = v / d;
      CQ den = CQ(1) - ratio * s;
      if (den.is_zero()) continue;
      z[i] = round_dyadic(z[i] - ratio / den, prec, nullptr);
    }
  }
  if (out.size() != static_cast<std::size_t>(n)) throw Error("complex root isolation failed");
  std::sort(out.begin(), out.end(), [](const RootBall& a, const RootBall& b) {
    if (a.real != b.real) return a.real;
    if (a.center.re != b.center.re) return a.center.re < b.center.re;
    return a.center.im < b.center.im;
  });
  return out;
}

std::mutex cache_mutex;
std::map<std::string, std::pair<long, std::vector<RootBall>>> cache;

}  // namespace

std::vector<RootBall> isolate_complex_roots(const QPoly& p, long bits) {
  std::string key = p.monic().to_string();
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end() && it->second.first >= bits) return it->second.second;
  }
  auto res = isolate_uncached(p, bits);
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[key];
  if (slot.first < bits) slot = {bits, res};
  return res;
}

}  // namespace cll::algebra
