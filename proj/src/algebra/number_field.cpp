#include "cll/algebra/number_field.hpp"

#include <sstream>

#include "cll/algebra/factor.hpp"

namespace cll::algebra {

namespace {

const FieldPtr& common(const FieldElem& a, const FieldElem& b) {
  if (a.field() && b.field() && a.field() != b.field()) throw PreconditionViolation("elements of different number fields");
  return a.field() ? a.field() : b.field();
}

std::vector<Rational> lift(const FieldElem& a, const FieldPtr& K) {
  if (a.field() || !K) return a.coords();
  std::vector<Rational> c(K->degree(), Rational(0));
  c[0] = a.coords()[0];
  return c;
}

// s with s*a = 1 mod m
QPoly inverse_mod(const QPoly& a, const QPoly& m) {
  QPoly r0 = m, r1 = a, s0, s1 = QPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw DivisionByZero("element is not invertible");
  return s0 * (Rational(1) / r0[0]);
}

}  // namespace

// ---- NumberField ----

NumberField::NumberField(QPoly minpoly, AlgebraicNumber theta) : minpoly_(minpoly.monic()), theta_(std::move(theta)) {
  if (minpoly_.degree() < 1) throw PreconditionViolation("field minimal polynomial must be non-constant");
}

FieldPtr NumberField::make(QPoly minpoly, AlgebraicNumber theta) {
  return std::make_shared<NumberField>(std::move(minpoly), std::move(theta));
}

FieldPtr NumberField::rationals() {
  static FieldPtr q = make(QPoly{Rational(0), Rational(1)}, AlgebraicNumber(0));
  return q;
}

std::vector<Rational> NumberField::reduce(std::vector<Rational> c) const {
  const std::size_t D = static_cast<std::size_t>(degree());
  for (std::size_t k = c.size(); k-- > D;) {
    if (sgn(c[k]) == 0) continue;
    Rational f = c[k];
    for (std::size_t j = 0; j < D; ++j) c[k - D + j] -= f * minpoly_[j];
    c[k] = 0;
  }
  c.resize(D, Rational(0));
  return c;
}

const std::vector<Ball>& NumberField::power_balls(long bits) const {
  bits = (bits + 31) / 32 * 32;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = powers_.find(bits);
    if (it != powers_.end()) return it->second;
  }
  const int D = degree();
  // guard bits for the growth of |theta|^j
  Rational mag = theta_.ball(8).abs_upper() + 1;
  long grow = std::max<long>(0, ilog2(mag) + 1) * D + D + 8;
  Ball t = theta_.ball(bits + grow);
  std::vector<Ball> p{Ball::exact(Rational(1), bits + grow)};
  for (int j = 1; j < D; ++j) p.push_back(p.back() * t);
  std::lock_guard<std::mutex> lock(mu_);
  return powers_.emplace(bits, std::move(p)).first->second;
}

const std::vector<Rational>& NumberField::conj_theta(const FieldPtr& self) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (conj_theta_) return *conj_theta_;
  }
  std::vector<Rational> c(degree(), Rational(0));
  if (theta_.is_real()) {
    c = FieldElem::generator(self).coords();
  } else {
    auto facs = factor_over(self, to_kpoly(minpoly_));
    std::vector<FieldElem> lin;
    for (const auto& f : facs)
      if (f.degree() == 1) lin.push_back(-(f[0] / f[1]));
    bool done = false;
    for (long bits = 16; !done && bits < 1 << 14; bits *= 2) {
      Ball target = theta_.ball(bits).conj();
      int hits = 0;
      const FieldElem* hit = nullptr;
      for (const auto& r : lin)
        if (!disjoint(r.ball(bits), target)) {
          ++hits;
          hit = &r;
        }
      if (hits == 1) {
        c = hit->coords();
        done = true;
      } else if (hits == 0) {
        throw PreconditionViolation("number field is not closed under complex conjugation");
      }
    }
    if (!done) throw Error("could not identify the conjugate generator");
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (!conj_theta_) conj_theta_ = std::move(c);
  return *conj_theta_;
}

void NumberField::set_conj_theta(std::vector<Rational> c) const {
  std::lock_guard<std::mutex> lock(mu_);
  conj_theta_ = std::move(c);
}

// ---- FieldElem ----

FieldElem::FieldElem(FieldPtr K, std::vector<Rational> coords) : K_(std::move(K)) {
  if (!K_) {
    if (coords.size() > 1) throw PreconditionViolation("bare rational with several coordinates");
    c_ = coords.empty() ? std::vector<Rational>{Rational(0)} : coords;
    return;
  }
  c_ = K_->reduce(std::move(coords));
}

FieldElem FieldElem::generator(const FieldPtr& K) {
  if (K->degree() == 1) return FieldElem(K, {-K->minpoly()[0]});
  return FieldElem(K, {Rational(0), Rational(1)});
}

bool FieldElem::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

bool FieldElem::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

std::optional<Rational> FieldElem::rational_value() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  const FieldPtr& K = common(a, b);
  auto x = lift(a, K), y = lift(b, K);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  FieldElem r;
  r.K_ = K;
  r.c_ = std::move(x);
  return r;
}

FieldElem operator-(const FieldElem& a) {
  FieldElem r = a;
  for (auto& x : r.c_) x = -x;
  return r;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  const FieldPtr& K = common(a, b);
  if (!a.K_ || !b.K_ || K->degree() == 1) {
    // scalar fast path
    const FieldElem& s = (!a.K_ || (K && K->degree() == 1)) ? a : b;
    const FieldElem& v = (&s == &a) ? b : a;
    auto x = lift(v, K);
    const Rational& q = s.c_[0];
    for (auto& c : x) c *= q;
    FieldElem r;
    r.K_ = K;
    r.c_ = std::move(x);
    return r;
  }
  const auto& x = a.c_;
  const auto& y = b.c_;
  std::vector<Rational> p(x.size() + y.size() - 1, Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) p[i + j] += x[i] * y[j];
  }
  return FieldElem(K, std::move(p));
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in number field");
  if (!K_ || K_->degree() == 1) {
    FieldElem r = *this;
    r.c_[0] = Rational(1) / c_[0];
    return r;
  }
  QPoly s = inverse_mod(QPoly(c_), K_->minpoly());
  return FieldElem(K_, s.coeffs());
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

bool operator==(const FieldElem& a, const FieldElem& b) { return (a - b).is_zero(); }

Ball FieldElem::ball(long bits) const {
  if (!K_) return Ball::exact(c_[0], bits + 8);
  for (long wb = bits + 8;; wb += 32) {
    const auto& pw = K_->power_balls(wb);
    Ball acc = Ball::exact(Rational(0), wb);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      acc = acc + pw[j] * Ball::exact(c_[j], wb);
    }
    if (acc.rad() <= pow2(-bits)) return acc;
  }
}

QPoly FieldElem::minpoly() const {
  if (is_rational()) return QPoly{Rational(-c_[0]), Rational(1)};
  return char_poly(mult_matrix(*this)).squarefree_part();
}

AlgebraicNumber FieldElem::to_algebraic() const {
  if (auto q = rational_value()) return AlgebraicNumber(*q);
  QPoly mp = minpoly();
  for (long bits = 16;; bits *= 2) {
    Ball v = ball(bits);
    auto roots = isolate_complex_roots(mp, bits);
    int hits = 0;
    const RootBall* hit = nullptr;
    for (const auto& rb : roots) {
      Rational s = rb.radius + v.rad();
      if ((rb.center - v.mid()).norm2() < s * s) {
        ++hits;
        hit = &rb;
      }
    }
    if (hits == 1) return AlgebraicNumber(mp, hit->center, hit->radius);
    if (bits > 1 << 14) throw Error("could not convert field element");
  }
}

FieldElem FieldElem::conj() const {
  if (!K_ || is_rational()) return *this;
  FieldElem ct(K_, K_->conj_theta(K_));
  // Horner in conj(theta)
  FieldElem acc(K_, {Rational(0)});
  for (std::size_t j = c_.size(); j-- > 0;) acc = acc * ct + FieldElem(K_, {c_[j]});
  return acc;
}

FieldElem FieldElem::re() const { return (*this + conj()) * FieldElem(Rational(1, 2)); }
FieldElem FieldElem::i_im() const { return (*this - conj()) * FieldElem(Rational(1, 2)); }

int FieldElem::re_sign() const {
  if (auto q = rational_value()) return sgn(*q);
  FieldElem r = re();
  if (r.is_zero()) return 0;
  if (auto q = r.rational_value()) return sgn(*q);
  for (long bits = 16;; bits *= 2) {
    int s = r.ball(bits).re_sign();
    if (s != 0) return s;
  }
}

int FieldElem::im_sign() const {
  if (is_rational()) return 0;
  FieldElem d = i_im();
  if (d.is_zero()) return 0;
  for (long bits = 16;; bits *= 2) {
    int s = d.ball(bits).im_sign();
    if (s != 0) return s;
  }
}

std::string FieldElem::to_string() const {
  if (auto q = rational_value()) return q->get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[j] << ")";
    if (j >= 1) os << "*th";
    if (j >= 2) os << "^" << j;
  }
  return os.str();
}

// ---- helpers ----

FieldElem in_field(const FieldPtr& K, const FieldElem& x) {
  if (x.field() == K) return x;
  if (!x.field() || x.field()->degree() == 1) return FieldElem(K, {x.coords()[0]});
  if (!K || K->degree() == 1) {
    if (auto q = x.rational_value()) return FieldElem(K, {*q});
  }
  throw PreconditionViolation("element belongs to a different number field");
}

KPoly to_kpoly(const QPoly& p) {
  std::vector<FieldElem> c;
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return KPoly(std::move(c));
}

RationalMatrix mult_matrix(const FieldElem& x) {
  const FieldPtr& K = x.field();
  const std::size_t D = K ? static_cast<std::size_t>(K->degree()) : 1;
  RationalMatrix M(D, D, Rational(0));
  if (!K) {
    M(0, 0) = x.coords()[0];
    return M;
  }
  FieldElem b(K, {Rational(1)});
  FieldElem th = D == 1 ? FieldElem(K, {Rational(1)}) : FieldElem::generator(K);
  for (std::size_t j = 0; j < D; ++j) {
    FieldElem col = x * b;
    for (std::size_t i = 0; i < D; ++i) M(i, j) = col.coords()[i];
    b = b * th;
  }
  return M;
}

Rational det(RationalMatrix M) {
  const std::size_t n = M.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(M(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M(p, j), M(c, j));
      d = -d;
    }
    d *= M(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(M(i, c)) == 0) continue;
      Rational f = M(i, c) / M(c, c);
      for (std::size_t j = c; j < n; ++j) M(i, j) -= f * M(c, j);
    }
  }
  return d;
}

FieldElem substitute(const FieldElem& x, const FieldElem& image) {
  FieldElem acc(image.field(), {Rational(0)});
  if (!x.field()) return FieldElem(image.field(), {x.coords()[0]});
  if (x.field()->degree() == 1) return FieldElem(image.field(), {x.coords()[0]});
  for (std::size_t j = x.coords().size(); j-- > 0;)
    acc = acc * image + FieldElem(image.field(), {x.coords()[j]});
  return acc;
}

}  // namespace cll::algebra
