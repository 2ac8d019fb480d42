#include "cll/algebra/ball.hpp"

#include <algorithm>
#include <sstream>

#include <mpfr.h>

namespace cll::algebra {

CQ operator/(const CQ& a, const CQ& b) {
  Rational n = b.norm2();
  if (sgn(n) == 0) throw DivisionByZero("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Rational abs_upper(const CQ& z, long bits) { return sqrt_upper(z.norm2(), bits); }

Rational abs_lower(const CQ& z, long bits) {
  Rational n2 = z.norm2();
  if (sgn(n2) == 0) return 0;
  Rational s = sqrt_upper(n2, bits);
  // s >= |z|; walk down one ulp at a time is too slow, use n2 / s <= |z|
  return n2 / s;
}

CQ round_dyadic(const CQ& z, long bits, Rational* err) {
  CQ r{round_down(z.re, bits), round_down(z.im, bits)};
  if (err) *err = abs(z.re - r.re) + abs(z.im - r.im);
  return r;
}

Ball::Ball(CQ mid, Rational rad, long prec) : mid_(std::move(mid)), rad_(std::move(rad)), prec_(prec) {
  if (sgn(rad_) < 0) rad_ = -rad_;
  normalize();
}

void Ball::normalize() {
  Rational err;
  mid_ = round_dyadic(mid_, prec_, &err);
  rad_ += err;
  if (rad_.get_den() != 1) {
    // round radius up to a dyadic with a few more bits
    Rational scaled = rad_ * pow2(prec_ + 4);
    Rational up(ceil(scaled));
    rad_ = up * pow2(-(prec_ + 4));
  }
}

static long pmax(const Ball& a, const Ball& b) { return std::max(a.prec(), b.prec()); }

Ball operator+(const Ball& a, const Ball& b) { return Ball(a.mid_ + b.mid_, a.rad_ + b.rad_, pmax(a, b)); }
Ball operator-(const Ball& a, const Ball& b) { return Ball(a.mid_ - b.mid_, a.rad_ + b.rad_, pmax(a, b)); }
Ball operator-(const Ball& a) { return Ball(-a.mid_, a.rad_, a.prec_); }

Ball operator*(const Ball& a, const Ball& b) {
  long p = pmax(a, b);
  Rational am = abs(a.mid_.re) + abs(a.mid_.im), bm = abs(b.mid_.re) + abs(b.mid_.im);
  Rational r = am * b.rad_ + bm * a.rad_ + a.rad_ * b.rad_;
  return Ball(a.mid_ * b.mid_, r, p);
}

Ball operator/(const Ball& a, const Ball& b) {
  long p = pmax(a, b);
  Rational lo = abs_lower(b.mid_, p + 8) - b.rad_;
  if (sgn(lo) <= 0) throw DivisionByZero("ball division: divisor contains zero");
  // 1/(m+e) = 1/m - e/(m(m+e)), |e/(m(m+e))| <= r/(|m| lo)
  CQ inv = CQ(1) / b.mid_;
  Rational ml = abs_lower(b.mid_, p + 8);
  Ball binv(inv, b.rad_ / (ml * lo), p);
  return a * binv;
}

bool Ball::contains_zero() const { return mid_.norm2() <= rad_ * rad_; }

Rational Ball::abs_upper() const { return cll::algebra::abs_upper(mid_, prec_ + 4) + rad_; }

int Ball::re_sign() const {
  if (re_lower() > 0) return 1;
  if (re_upper() < 0) return -1;
  return 0;
}
int Ball::im_sign() const {
  if (im_lower() > 0) return 1;
  if (im_upper() < 0) return -1;
  return 0;
}

bool disjoint(const Ball& a, const Ball& b) {
  Rational s = a.rad_ + b.rad_;
  return (a.mid_ - b.mid_).norm2() > s * s;
}

bool inside(const Ball& a, const Ball& b) {
  Rational slack = b.rad_ - a.rad_;
  if (sgn(slack) < 0) return false;
  return (a.mid_ - b.mid_).norm2() < slack * slack;
}

std::string Ball::to_string() const {
  std::ostringstream os;
  os << "[" << to_double(mid_.re) << (sgn(mid_.im) < 0 ? "-" : "+") << to_double(abs(mid_.im)) << "i +/- "
     << to_double(rad_) << "]";
  return os.str();
}

namespace {

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(long prec) { mpfr_init2(v, prec); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

Rational to_rational(const mpfr_t x) {
  Integer m;
  long e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational r(m);
  return r * pow2(e);
}

// exact dyadic q into an MPFR value
void set_exact(Mpfr& out, const Rational& q) {
  long bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) + 2;
  mpfr_set_prec(out.v, std::max<long>(bits, MPFR_PREC_MIN + 1));
  if (mpfr_set_q(out.v, q.get_mpq_t(), MPFR_RNDN) != 0) throw Error("ball center is not dyadic");
}

// [lo, hi] enclosure of fn(x) via directed rounding
template <class F>
std::pair<Rational, Rational> bracket(F fn, const Mpfr& x, long prec) {
  Mpfr lo(prec), hi(prec);
  fn(lo.v, x.v, MPFR_RNDD);
  fn(hi.v, x.v, MPFR_RNDU);
  return {to_rational(lo.v), to_rational(hi.v)};
}

std::pair<Rational, Rational> mul_iv(const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) {
  Rational c[4] = {a.first * b.first, a.first * b.second, a.second * b.first, a.second * b.second};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

}  // namespace

Ball exp(const Ball& z) {
  const long prec = z.prec();
  const Rational& x = z.mid().re;
  const Rational& y = z.mid().im;
  // relative precision: absolute target plus the magnitude of e^x
  long mag = std::max<long>(0, static_cast<long>(to_double(x) * 1.4427) + 2);
  const long wp = prec + mag + 32;
  Mpfr mx(64), my(64);
  set_exact(mx, x);
  set_exact(my, y);
  auto ex = bracket(mpfr_exp, mx, wp);
  std::pair<Rational, Rational> c{1, 1}, s{0, 0};
  if (sgn(y) != 0) {
    c = bracket(mpfr_cos, my, wp);
    s = bracket(mpfr_sin, my, wp);
  }
  auto re = mul_iv(ex, c), im = mul_iv(ex, s);
  CQ mid((re.first + re.second) / 2, (im.first + im.second) / 2);
  Rational rad = (re.second - re.first) / 2 + (im.second - im.first) / 2;
  if (sgn(z.rad()) > 0) {
    // |e^{m+d} - e^m| <= |e^m| (e^r - 1) <= |e^m| r e^r
    Mpfr mr(64);
    set_exact(mr, z.rad());
    auto er = bracket(mpfr_exp, mr, 64);
    rad += ex.second * z.rad() * er.second;
  }
  return Ball(mid, rad, prec);
}

}  // namespace cll::algebra
