#include "cll/pef/pef.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cll::pef {

using algebra::NumberField;

namespace {

struct CoordLess {
  bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

KPoly lift(const FieldPtr& K, const KPoly& p) {
  std::vector<FieldElem> c;
  c.reserve(p.size());
  for (const auto& x : p.coeffs()) c.push_back(algebra::in_field(K, x));
  return KPoly(std::move(c));
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return a;
  if (a->degree() == 1) return b;
  if (b->degree() == 1) return a;
  throw PreconditionViolation("PEFs live in different number fields");
}

FieldElem eval_at(const KPoly& p, const FieldElem& t) {
  FieldElem acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
  return acc;
}

}  // namespace

Pef::Pef(FieldPtr K, std::vector<Term> terms) : K_(std::move(K)), terms_(std::move(terms)) { normalize(); }

void Pef::normalize() {
  std::map<std::vector<Rational>, Term, CoordLess> acc;
  for (auto& t : terms_) {
    FieldElem e = algebra::in_field(K_, t.exponent);
    KPoly c = lift(K_, t.coeff);
    auto key = e.coords();
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(std::move(key), Term{std::move(c), std::move(e)});
    else
      it->second.coeff = it->second.coeff + c;
  }
  terms_.clear();
  for (auto& [k, t] : acc)
    if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

Pef Pef::constant(const FieldElem& c, FieldPtr K) {
  if (c.field()) K = c.field();
  return Pef(K, {Term{KPoly{c}, FieldElem(0)}});
}

Pef Pef::term(const KPoly& coeff, const FieldElem& exponent, FieldPtr K) {
  return Pef(std::move(K), {Term{coeff, exponent}});
}

Pef Pef::polynomial(const QPoly& p) {
  return Pef(NumberField::rationals(), {Term{algebra::to_kpoly(p), FieldElem(0)}});
}

Pef Pef::t() { return polynomial(QPoly{Rational(0), Rational(1)}); }

std::vector<FieldElem> Pef::power() const {
  std::vector<FieldElem> out;
  for (const auto& t : terms_) out.push_back(t.exponent);
  return out;
}

bool Pef::has_exponent(const FieldElem& e) const { return !coeff_of(e).is_zero(); }

KPoly Pef::coeff_of(const FieldElem& e) const {
  FieldElem x = algebra::in_field(K_, e);
  for (const auto& t : terms_)
    if (t.exponent == x) return t.coeff;
  return {};
}

int Pef::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.coeff.degree());
  return d;
}

bool Pef::is_polynomial() const { return terms_.size() == 1 && terms_[0].exponent.is_zero(); }

Pef operator+(const Pef& a, const Pef& b) {
  FieldPtr K = common_field(a.K_, b.K_);
  std::vector<Term> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return Pef(K, std::move(t));
}

Pef operator-(const Pef& a) {
  std::vector<Term> t = a.terms_;
  for (auto& x : t) x.coeff = KPoly() - x.coeff;
  return Pef(a.K_, std::move(t));
}

Pef operator-(const Pef& a, const Pef& b) { return a + (-b); }

Pef operator*(const Pef& a, const Pef& b) {
  FieldPtr K = common_field(a.K_, b.K_);
  std::vector<Term> t;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) t.push_back({lift(K, x.coeff) * lift(K, y.coeff), algebra::in_field(K, x.exponent) + algebra::in_field(K, y.exponent)});
  return Pef(K, std::move(t));
}

Pef operator*(const Pef& a, const FieldElem& s) {
  FieldPtr K = s.field() ? common_field(a.K_, s.field()) : a.K_;
  std::vector<Term> t;
  for (const auto& x : a.terms_) {
    std::vector<FieldElem> c;
    for (const auto& y : x.coeff.coeffs()) c.push_back(y * s);
    t.push_back({KPoly(std::move(c)), x.exponent});
  }
  return Pef(K, std::move(t));
}

bool operator==(const Pef& a, const Pef& b) { return (a - b).is_zero(); }

Pef Pef::derivative() const {
  // (p e^{lt})' = (p' + l p) e^{lt}
  std::vector<Term> t;
  for (const auto& x : terms_) {
    std::vector<FieldElem> c;
    for (const auto& y : x.coeff.coeffs()) c.push_back(y * x.exponent);
    t.push_back({x.coeff.derivative() + KPoly(std::move(c)), x.exponent});
  }
  return Pef(K_, std::move(t));
}

Pef Pef::conj() const {
  std::vector<Term> t;
  for (const auto& x : terms_) {
    std::vector<FieldElem> c;
    for (const auto& y : x.coeff.coeffs()) c.push_back(y.conj());
    t.push_back({KPoly(std::move(c)), x.exponent.conj()});
  }
  return Pef(K_, std::move(t));
}

bool Pef::is_real() const { return conj() == *this; }

Pef Pef::shift_exponent(const FieldElem& c) const {
  FieldPtr K = c.field() ? common_field(K_, c.field()) : K_;
  std::vector<Term> t = terms_;
  for (auto& x : t) x.exponent = algebra::in_field(K, x.exponent) + c;
  return Pef(K, std::move(t));
}

std::vector<FieldElem> Pef::coeff_values(const Rational& t) const {
  std::vector<FieldElem> out;
  for (const auto& x : terms_) out.push_back(eval_at(x.coeff, FieldElem(t)));
  return out;
}

FieldElem Pef::value_at_zero() const {
  FieldElem s = algebra::in_field(K_, FieldElem(0));
  for (const auto& x : terms_) s = s + x.coeff.coeff(0);
  return s;
}

Ball Pef::eval_ball(const Rational& t, long bits) const {
  const auto vals = coeff_values(t);
  for (long wb = bits + 16;; wb += 32) {
    Ball acc = Ball::exact(Rational(0), wb);
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (vals[k].is_zero()) continue;
      Ball e = algebra::exp((terms_[k].exponent * FieldElem(t)).ball(wb));
      acc = acc + vals[k].ball(wb) * e;
    }
    if (acc.rad() <= pow2(-bits)) return acc;
    if (wb > bits + 100000) throw Error("PEF evaluation did not converge");
  }
}

Rational exp_upper(const Rational& x) {
  return algebra::exp(Ball::exact(x, 32)).abs_upper();
}

Rational Pef::sup_abs(const Rational& a, const Rational& b) const {
  const Rational m = std::max(abs(a), abs(b));
  Rational total = 0;
  for (const auto& x : terms_) {
    Rational P = 0, mj = 1;
    for (const auto& c : x.coeff.coeffs()) {
      if (!c.is_zero()) P += c.ball(8).abs_upper() * mj;
      mj *= m;
    }
    Ball lam = x.exponent.ball(16);
    Rational E = 0;
    for (const Rational& t : {a, b}) E = std::max(E, exp_upper(std::max(lam.re_lower() * t, lam.re_upper() * t)));
    total += P * E;
  }
  return total;
}

std::vector<std::pair<AlgPoly, AlgebraicNumber>> Pef::algebraic_terms() const {
  std::vector<std::pair<AlgPoly, AlgebraicNumber>> out;
  for (const auto& x : terms_) {
    std::vector<AlgebraicNumber> c;
    for (const auto& y : x.coeff.coeffs()) c.push_back(y.to_algebraic());
    out.emplace_back(AlgPoly(std::move(c)), x.exponent.to_algebraic());
  }
  return out;
}

std::string Pef::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& x : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(";
    bool f2 = true;
    for (std::size_t j = 0; j < x.coeff.size(); ++j) {
      if (x.coeff[j].is_zero()) continue;
      if (!f2) os << " + ";
      f2 = false;
      os << "(" << x.coeff[j].to_string() << ")";
      if (j == 1) os << "*t";
      if (j > 1) os << "*t^" << j;
    }
    os << ")";
    if (!x.exponent.is_zero()) os << "*exp((" << x.exponent.to_string() << ")*t)";
  }
  return os.str();
}

Pef pef_add(const Pef& f, const Pef& g) { return f + g; }
Pef pef_mul(const Pef& f, const Pef& g) { return f * g; }
Pef pef_derivative(const Pef& f) { return f.derivative(); }

RealPef::RealPef(Pef f) : f_(std::move(f)) {
  if (!f_.is_real()) throw PreconditionViolation("PEF is not real-valued: " + f_.to_string());
}

int RealPef::sign_at(const Rational& t) const {
  if (f_.is_zero()) return 0;
  if (sgn(t) == 0) {
    FieldElem v = f_.value_at_zero();
    if (v.is_zero()) return 0;
    return v.re_sign();
  }
  // distinct algebraic exponents at a nonzero rational: zero only when every
  // coefficient vanishes (Lindemann-Weierstrass)
  const auto vals = f_.coeff_values(t);
  if (std::all_of(vals.begin(), vals.end(), [](const FieldElem& v) { return v.is_zero(); })) return 0;
  for (long bits = 32;; bits *= 2) {
    Ball b = f_.eval_ball(t, bits);
    if (sgn(b.re_lower()) > 0) return 1;
    if (sgn(b.re_upper()) < 0) return -1;
    if (bits > (1L << 22)) throw Error("sign evaluation did not converge");
  }
}

Rational RealPef::lipschitz(const Rational& a, const Rational& b) const { return f_.derivative().sup_abs(a, b); }

std::string ShiftedPef::describe() const {
  return "(" + base_.describe() + ") at t + " + algebra::to_string(g_);
}

Ball SquareSum::eval(const Rational& t, long bits) const {
  for (long extra = 8;; extra += 32) {
    Ball x = a_->eval(t, bits + extra), y = b_->eval(t, bits + extra);
    Ball r = x * x + y * y;
    if (r.rad() <= pow2(-bits)) return r;
  }
}

int SquareSum::sign_at(const Rational& t) const {
  return a_->sign_at(t) == 0 && b_->sign_at(t) == 0 ? 0 : 1;
}

Rational SquareSum::sup_abs(const Rational& a, const Rational& b) const {
  Rational x = a_->sup_abs(a, b), y = b_->sup_abs(a, b);
  return x * x + y * y;
}

Rational SquareSum::lipschitz(const Rational& a, const Rational& b) const {
  return 2 * (a_->sup_abs(a, b) * a_->lipschitz(a, b) + b_->sup_abs(a, b) * b_->lipschitz(a, b));
}

std::string SquareSum::describe() const { return "(" + a_->describe() + ")^2 + (" + b_->describe() + ")^2"; }

Rational pef_eval_approx(const RealFunction& f, const Rational& t, const Rational& eps) {
  if (sgn(eps) <= 0) throw PreconditionViolation("eps must be positive");
  long bits = 2 - algebra::ilog2(eps);
  if (bits < 2) bits = 2;
  return f.eval(t, bits).mid().re;
}

int pef_sign_at(const RealFunction& f, const Rational& t) { return f.sign_at(t); }

Rational lipschitz_bound(const RealFunction& f, const Rational& a, const Rational& b) { return f.lipschitz(a, b); }

}  // namespace cll::pef
