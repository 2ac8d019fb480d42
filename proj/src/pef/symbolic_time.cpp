#include "cll/pef/symbolic_time.hpp"

#include <sstream>

#include "cll/pef/exist.hpp"
#include "cll/pef/squarefree.hpp"

namespace cll::pef {

IsolatingInterval RootRef::interval() const {
  std::lock_guard<std::mutex> lock(mu_);
  return iv_;
}

IsolatingInterval RootRef::refine(const Rational& w) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!iv_.exact && iv_.width() > w) iv_ = refine_square_free(s_, iv_, w);
  return iv_;
}

SymbolicTime::SymbolicTime(std::shared_ptr<const RootRef> r, Rational offset) : root_(std::move(r)), q_(std::move(offset)) {
  if (root_)
    if (auto e = root_->interval().exact) {
      q_ += *e;
      root_.reset();
    }
}

std::optional<Rational> SymbolicTime::exact() const {
  if (!root_) return q_;
  if (auto e = root_->interval().exact) return *e + q_;
  return std::nullopt;
}

SymbolicTime operator+(const SymbolicTime& t, const Rational& g) {
  SymbolicTime r = t;
  r.q_ += g;
  return r;
}

std::pair<Rational, Rational> SymbolicTime::bounds(const Rational& w) const {
  if (auto e = exact()) return {*e, *e};
  IsolatingInterval iv = root_->refine(w);
  if (iv.exact) return {*iv.exact + q_, *iv.exact + q_};
  return {iv.low + q_, iv.high + q_};
}

double SymbolicTime::approx() const {
  auto [lo, hi] = bounds(algebra::make_rational(1, 1000000000000L));
  return algebra::to_double((lo + hi) / 2);
}

std::string SymbolicTime::to_string() const {
  if (auto e = exact()) return algebra::to_string(*e);
  std::ostringstream os;
  IsolatingInterval iv = root_->interval();
  os << "root in " << iv.to_string();
  if (sgn(q_) != 0) os << " + " << algebra::to_string(q_);
  os << " ~ " << approx();
  return os.str();
}

namespace {

Cmp from_sign(int s) { return s < 0 ? Cmp::LT : (s > 0 ? Cmp::GT : Cmp::EQ); }

// root of s in (low, high) against the rational q
Cmp root_vs(const RealPef& s, const IsolatingInterval& iv, const Rational& q) {
  if (iv.exact) return from_sign(sgn(*iv.exact - q));
  if (q <= iv.low) return Cmp::GT;
  if (q >= iv.high) return Cmp::LT;
  int sq = s.sign_at(q);
  if (sq == 0) return Cmp::EQ;
  // root lies in (low, q) iff s changes sign there
  return s.sign_at(iv.low) * sq < 0 ? Cmp::LT : Cmp::GT;
}

// s2(t - G) when it is again a PEF over the same field (single-term s2), else nullopt
std::optional<Pef> shifted(const RealPef& s2, const Rational& G) {
  if (sgn(G) == 0) return s2.pef();
  const Pef& f = s2.pef();
  if (f.terms().size() != 1) return std::nullopt;
  KPoly p = f.terms()[0].coeff.compose(KPoly{FieldElem(-G), FieldElem(1)});
  return Pef::term(p, f.terms()[0].exponent, f.field());
}

bool has_root_in(const Pef& h, const Rational& lo, const Rational& hi) {
  if (h.terms().empty()) return true;
  if (h.is_polynomial() && h.degree() == 0) return false;
  return !isolate_roots(h, lo, hi).empty();
}

}  // namespace

Cmp compare_times(const SymbolicTime& t1, const SymbolicTime& t2, const Rational& g, const CompareOptions& opt) {
  // r1 + o1 vs r2 + o2 + g  <=>  r1 vs r2 + G
  const Rational G = t2.offset() + g - t1.offset();
  auto e1 = t1.exact(), e2 = t2.exact();
  if (e1 && e2) return from_sign(sgn(*e1 - *e2 - g));
  if (!e2) {
    if (e1) {
      Cmp c = root_vs(t2.root()->witness(), t2.root()->interval(), *e1 - t2.offset() - g);
      return from_sign(-static_cast<int>(c));
    }
  } else {
    return root_vs(t1.root()->witness(), t1.root()->interval(), *e2 + g - t1.offset());
  }
  const RootRef& a = *t1.root();
  const RootRef& b = *t2.root();
  if (&a == &b && sgn(G) == 0) return Cmp::EQ;

  bool tried_gcd = false;
  Rational w = std::max(a.interval().width(), b.interval().width());
  for (int step = 0; step <= opt.budget; ++step, w /= 2) {
    IsolatingInterval ia = a.refine(w), ib = b.refine(w);
    if (ia.exact || ib.exact) return compare_times(SymbolicTime(t1.root(), t1.offset()), SymbolicTime(t2.root(), t2.offset()), g, opt);
    const Rational lo = std::max(ia.low, Rational(ib.low + G)), hi = std::min(ia.high, Rational(ib.high + G));
    if (lo >= hi) return ia.high <= ib.low + G ? Cmp::LT : Cmp::GT;
    if (!tried_gcd) {
      tried_gcd = true;
      if (auto s2 = shifted(b.witness(), G)) {
        Pef h = pef_gcd(a.witness().pef(), *s2);
        if (has_root_in(h, lo, hi)) return Cmp::EQ;
      }
    }
  }
  throw UndecidedEquality("could not separate " + t1.to_string() + " and " + t2.to_string() + " + " + algebra::to_string(g));
}

int sign_at(const RealPef& f, const SymbolicTime& t, const CompareOptions& opt) {
  if (auto e = t.exact()) return f.sign_at(*e);
  const RootRef& r = *t.root();
  const Rational o = t.offset();
  // f(rho + o) = 0 iff rho is a root of gcd(s, f(t + o))
  RealPef fs(square_free_part(f.pef()));
  IsolatingInterval iv = r.interval();
  if (auto sh = shifted(fs, -o)) {
    Pef h = pef_gcd(r.witness().pef(), *sh);
    if (has_root_in(h, iv.low, iv.high)) return 0;
  }
  Rational w = iv.width();
  for (int step = 0; step <= opt.budget; ++step, w /= 2) {
    iv = r.refine(w);
    if (iv.exact) return f.sign_at(*iv.exact + o);
    const Rational lo = iv.low + o, hi = iv.high + o;
    if (fs.sign_at(lo) != 0 && fs.sign_at(hi) != 0 && !exist_root(fs, lo, hi, opt.delta)) return f.sign_at(lo);
  }
  throw UndecidedEquality("could not decide the sign of " + f.describe() + " at " + t.to_string());
}

}  // namespace cll::pef
