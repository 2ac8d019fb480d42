#include "cll/algebra/algebraic.hpp"

#include <sstream>

#include "cll/algebra/factor.hpp"
#include "cll/algebra/matrix.hpp"

namespace cll::algebra {

namespace {

bool ball_inside(const CQ& c, const Rational& r, const CQ& outer_c, const Rational& outer_r) {
  Rational slack = outer_r - r;
  if (sgn(slack) <= 0) return false;
  return (c - outer_c).norm2() < slack * slack;
}

bool ball_apart(const CQ& c, const Rational& r, const CQ& oc, const Rational& orad) {
  Rational s = r + orad;
  return (c - oc).norm2() >= s * s;
}

long bits_for(const Rational& r) {
  if (sgn(r) <= 0) return 64;
  return std::max<long>(8, -ilog2(r) + 4);
}

// Index of the root ball of roots(minpoly, bits) inside B(c, r); -1 if none yet.
int locate(const std::vector<RootBall>& roots, const CQ& c, const Rational& r) {
  int found = -1;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (ball_inside(roots[i].center, roots[i].radius, c, r)) {
      if (found >= 0) return -1;
      found = static_cast<int>(i);
    }
  return found;
}

const QPoly X{Rational(0), Rational(1)};

}  // namespace

AlgebraicNumber::AlgebraicNumber(const Rational& q)
    : minpoly_{Rational(-q), Rational(1)}, center_(q), radius_(1), real_(true) {}

AlgebraicNumber::AlgebraicNumber(QPoly minpoly, CQ center, Rational radius)
    : minpoly_(minpoly.monic()), center_(std::move(center)), radius_(std::move(radius)) {
  if (minpoly_.degree() < 1) throw PreconditionViolation("minimal polynomial must be non-constant");
  if (sgn(radius_) <= 0) throw PreconditionViolation("radius must be positive");
  if (minpoly_.degree() == 1) {
    Rational v = -minpoly_[0];
    if (!((CQ(v) - center_).norm2() < radius_ * radius_))
      throw PreconditionViolation("ball does not contain the root");
    center_ = CQ(v);
    real_ = true;
    return;
  }
  if (gcd(minpoly_, minpoly_.derivative()).degree() > 0)
    throw PreconditionViolation("minimal polynomial is not square-free");
  for (long bits = bits_for(radius_); bits < 4096; bits += 16) {
    auto roots = isolate_complex_roots(minpoly_, bits);
    int inside = 0, undecided = 0;
    const RootBall* hit = nullptr;
    for (const auto& rb : roots) {
      if (ball_inside(rb.center, rb.radius, center_, radius_)) {
        ++inside;
        hit = &rb;
      } else if (!ball_apart(rb.center, rb.radius, center_, radius_)) {
        ++undecided;
      }
    }
    if (undecided == 0 || inside > 1) {
      if (inside != 1) throw PreconditionViolation("ball must isolate exactly one root of the minimal polynomial");
      real_ = hit->real;
      return;
    }
  }
  throw DegenerateInput("root lies on the boundary of the given ball");
}

std::vector<AlgebraicNumber> AlgebraicNumber::roots_of(const QPoly& p) {
  if (p.is_zero()) throw PreconditionViolation("roots of the zero polynomial");
  std::vector<AlgebraicNumber> out;
  for (const auto& [f, mult] : factor(p)) {
    (void)mult;
    for (const auto& rb : isolate_complex_roots(f, 8)) {
      AlgebraicNumber a;
      a.minpoly_ = f;
      a.center_ = rb.center;
      a.radius_ = rb.radius;
      a.real_ = rb.real;
      if (f.degree() == 1) a = AlgebraicNumber(-f[0] / f[1]);
      out.push_back(std::move(a));
    }
  }
  return out;
}

AlgebraicNumber AlgebraicNumber::nearest_root(const QPoly& minpoly, const CQ& guess) {
  QPoly m = minpoly.monic();
  if (m.degree() == 1) return AlgebraicNumber(-m[0]);
  for (long bits = 16;; bits *= 2) {
    auto roots = isolate_complex_roots(m, bits);
    // nearest, accepted once its ball is clearly closer than any other
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
      if ((roots[i].center - guess).norm2() < (roots[best].center - guess).norm2()) best = i;
    AlgebraicNumber a;
    a.minpoly_ = m;
    a.center_ = roots[best].center;
    a.radius_ = roots[best].radius;
    a.real_ = roots[best].real;
    if (bits >= 64) return a;
  }
}

std::optional<Rational> AlgebraicNumber::rational_value() const {
  if (!is_rational()) return std::nullopt;
  return -minpoly_[0];
}

AlgebraicNumber AlgebraicNumber::refine(const Rational& eps) const {
  if (sgn(eps) <= 0) throw PreconditionViolation("refine needs eps > 0");
  if (is_rational()) {
    AlgebraicNumber a = *this;
    a.radius_ = eps;
    return a;
  }
  if (radius_ <= eps) return *this;
  for (long bits = std::max(bits_for(eps), bits_for(radius_) + 4);; bits += 16) {
    auto roots = isolate_complex_roots(minpoly_, bits);
    int i = locate(roots, center_, radius_);
    if (i >= 0 && roots[i].radius <= eps) {
      AlgebraicNumber a = *this;
      a.center_ = roots[i].center;
      a.radius_ = roots[i].radius;
      return a;
    }
    if (bits > 1 << 16) throw Error("refinement did not converge");
  }
}

Ball AlgebraicNumber::ball(long bits) const {
  if (is_rational()) return Ball::exact(-minpoly_[0], bits + 8);
  AlgebraicNumber a = refine(pow2(-bits));
  return Ball(a.center_, a.radius_, bits + 8);
}

AlgebraicNumber AlgebraicNumber::conj() const {
  if (real_) return *this;
  AlgebraicNumber a = *this;
  a.center_ = center_.conj();
  return a;
}

std::string AlgebraicNumber::to_string() const {
  if (is_rational()) return algebra::to_string(-minpoly_[0]);
  std::ostringstream os;
  AlgebraicNumber a = refine(pow2(-40));
  os << "root of " << minpoly_.to_string() << " near " << to_double(a.center_.re);
  if (!real_) os << (sgn(a.center_.im) < 0 ? "-" : "+") << to_double(abs(a.center_.im)) << "i";
  return os.str();
}

namespace {

AlgebraicNumber shift_rational(const AlgebraicNumber& y, const Rational& a) {
  // y + a
  QPoly m = y.minpoly().compose(QPoly{-a, Rational(1)});
  return AlgebraicNumber(m, y.center() + CQ(a), y.radius());
}

AlgebraicNumber scale_rational(const AlgebraicNumber& y, const Rational& a) {
  // a*y, a != 0
  QPoly m = y.minpoly().compose(QPoly{Rational(0), Rational(1) / a});
  return AlgebraicNumber(m, y.center() * CQ(a), y.radius() * abs(a));
}

AlgebraicNumber negate(const AlgebraicNumber& y) { return scale_rational(y, Rational(-1)); }

// Designate the root of R equal to the value of x op y.
AlgebraicNumber designate(const QPoly& R, const AlgebraicNumber& x, const AlgebraicNumber& y, AlgOp op) {
  std::vector<QPoly> facs;
  for (const auto& [f, m] : factor(R)) {
    (void)m;
    facs.push_back(f);
  }
  for (long bits = 16;; bits *= 2) {
    Ball xb = x.ball(bits), yb = y.ball(bits);
    Ball v;
    switch (op) {
      case AlgOp::add: v = xb + yb; break;
      case AlgOp::sub: v = xb - yb; break;
      case AlgOp::mul: v = xb * yb; break;
      case AlgOp::div: v = xb / yb; break;
    }
    const QPoly* hit_f = nullptr;
    RootBall hit;
    int hits = 0;
    for (const auto& f : facs) {
      if (f.degree() == 1) {
        Rational r = -f[0] / f[1];
        if (!ball_apart(CQ(r), Rational(0), v.mid(), v.rad())) {
          ++hits;
          hit_f = &f;
          hit = RootBall{CQ(r), Rational(1), true};
        }
        continue;
      }
      for (const auto& rb : isolate_complex_roots(f, bits)) {
        if (!ball_apart(rb.center, rb.radius, v.mid(), v.rad())) {
          ++hits;
          hit_f = &f;
          hit = rb;
        }
      }
    }
    if (hits == 1) {
      if (hit_f->degree() == 1) return AlgebraicNumber(-(*hit_f)[0] / (*hit_f)[1]);
      return AlgebraicNumber(*hit_f, hit.center, hit.radius);
    }
    if (bits > 1 << 14) throw Error("could not designate arithmetic result");
  }
}

}  // namespace

AlgebraicNumber alg_arith(const AlgebraicNumber& x, const AlgebraicNumber& y, AlgOp op) {
  if (op == AlgOp::div && alg_is_zero(y)) throw DivisionByZero("algebraic division by zero");
  auto xr = x.rational_value(), yr = y.rational_value();
  if (xr && yr) {
    switch (op) {
      case AlgOp::add: return AlgebraicNumber(Rational(*xr + *yr));
      case AlgOp::sub: return AlgebraicNumber(Rational(*xr - *yr));
      case AlgOp::mul: return AlgebraicNumber(Rational(*xr * *yr));
      case AlgOp::div: return AlgebraicNumber(Rational(*xr / *yr));
    }
  }
  if (op == AlgOp::add) {
    if (xr) return shift_rational(y, *xr);
    if (yr) return shift_rational(x, *yr);
  }
  if (op == AlgOp::sub) {
    if (yr) return shift_rational(x, -*yr);
    if (xr) return shift_rational(negate(y), *xr);
  }
  if (op == AlgOp::mul) {
    if (xr) return sgn(*xr) == 0 ? AlgebraicNumber(0) : scale_rational(y, *xr);
    if (yr) return sgn(*yr) == 0 ? AlgebraicNumber(0) : scale_rational(x, *yr);
  }
  if (op == AlgOp::div) {
    if (yr) return scale_rational(x, Rational(1) / *yr);
    if (xr && sgn(*xr) == 0) return AlgebraicNumber(0);
  }

  RationalMatrix Cx = companion(x.minpoly());
  QPoly qy = y.minpoly();
  if (op == AlgOp::sub) qy = qy.reflect().monic();
  if (op == AlgOp::div) qy = qy.reversed().monic();
  RationalMatrix Cy = companion(qy);
  const std::size_t m = Cx.rows(), n = Cy.rows();
  RationalMatrix T;
  if (op == AlgOp::add || op == AlgOp::sub) {
    T = kron(Cx, RationalMatrix::identity(n, Rational(0), Rational(1))) +
        kron(RationalMatrix::identity(m, Rational(0), Rational(1)), Cy);
  } else {
    T = kron(Cx, Cy);
  }
  return designate(char_poly(T), x, y, op);
}

bool alg_is_zero(const AlgebraicNumber& x) {
  return x.minpoly().degree() == 1 && sgn(x.minpoly()[0]) == 0;
}

AlgebraicNumber alg_refine(const AlgebraicNumber& x, const Rational& eps) { return x.refine(eps); }
AlgebraicNumber alg_conj(const AlgebraicNumber& x) { return x.conj(); }

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) { return alg_arith(a, b, AlgOp::add); }
AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) { return alg_arith(a, b, AlgOp::sub); }
AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) { return alg_arith(a, b, AlgOp::mul); }
AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) { return alg_arith(a, b, AlgOp::div); }
AlgebraicNumber operator-(const AlgebraicNumber& a) {
  if (auto r = a.rational_value()) return AlgebraicNumber(Rational(-*r));
  return negate(a);
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.minpoly() != b.minpoly()) return false;
  if (a.is_rational()) return true;
  for (long bits = std::max(bits_for(a.radius()), bits_for(b.radius()));; bits += 16) {
    auto roots = isolate_complex_roots(a.minpoly(), bits);
    int ia = locate(roots, a.center(), a.radius());
    int ib = locate(roots, b.center(), b.radius());
    if (ia >= 0 && ib >= 0) return ia == ib;
    if (bits > 1 << 16) throw Error("equality test did not converge");
  }
}

AlgebraicNumber real_part(const AlgebraicNumber& x) {
  if (x.is_real()) return x;
  return (x + x.conj()) * AlgebraicNumber(make_rational(1, 2));
}

AlgebraicNumber imag_part(const AlgebraicNumber& x) {
  if (x.is_real()) return AlgebraicNumber(0);
  static const AlgebraicNumber i(QPoly{Rational(1), Rational(0), Rational(1)}, CQ(0, 1), Rational(1, 2));
  return (x - x.conj()) * (-i) * AlgebraicNumber(make_rational(1, 2));
}

int real_sign(const AlgebraicNumber& x) {
  if (alg_is_zero(x)) return 0;
  if (auto r = x.rational_value()) return sgn(*r);
  if (!x.is_real()) throw PreconditionViolation("real_sign of a non-real number");
  for (long bits = 8;; bits *= 2) {
    Ball b = x.ball(bits);
    if (int s = b.re_sign(); s != 0) return s;
  }
}

int compare_re_im(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  auto cmp = [](const AlgebraicNumber& x, const AlgebraicNumber& y, bool imag) {
    for (long bits = 8; bits <= 64; bits *= 2) {
      Ball xb = x.ball(bits), yb = y.ball(bits);
      Rational lo = imag ? xb.im_lower() - yb.im_upper() : xb.re_lower() - yb.re_upper();
      Rational hi = imag ? xb.im_upper() - yb.im_lower() : xb.re_upper() - yb.re_lower();
      if (sgn(lo) > 0) return 1;
      if (sgn(hi) < 0) return -1;
    }
    AlgebraicNumber d = imag ? imag_part(x - y) : real_part(x - y);
    return real_sign(d);
  };
  if (int c = cmp(a, b, false); c != 0) return c;
  return cmp(a, b, true);
}

}  // namespace cll::algebra
