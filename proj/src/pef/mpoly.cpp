#include "cll/pef/mpoly.hpp"

#include <sstream>

namespace cll::pef {

using algebra::FieldElem;

MPoly MPoly::constant(std::size_t nvars, const FieldElem& c) {
  MPoly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t i) {
  MPoly p(nvars);
  Monomial m(nvars, 0);
  m[i] = 1;
  p.add_term(m, FieldElem(1));
  return p;
}

bool MPoly::is_constant() const {
  if (t_.empty()) return true;
  if (t_.size() > 1) return false;
  for (int e : t_.begin()->first)
    if (e != 0) return false;
  return true;
}

void MPoly::add_term(const Monomial& m, const FieldElem& c) {
  if (c.is_zero()) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) t_.erase(it);
}

int MPoly::degree_in(std::size_t v) const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, m[v]);
  return d;
}

MPoly MPoly::coeff_in(std::size_t v, int k) const {
  MPoly out(n_);
  for (const auto& [m, c] : t_)
    if (m[v] == k) {
      Monomial m2 = m;
      m2[v] = 0;
      out.add_term(m2, c);
    }
  return out;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly r = a;
  r.n_ = std::max(a.n_, b.n_);
  for (const auto& [m, c] : b.t_) r.add_term(m, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  MPoly r = a;
  r.n_ = std::max(a.n_, b.n_);
  for (const auto& [m, c] : b.t_) r.add_term(m, -c);
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(std::max(a.n_, b.n_));
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) {
      MPoly::Monomial m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

MPoly operator*(const MPoly& a, const FieldElem& s) {
  MPoly r(a.n_);
  if (s.is_zero()) return r;
  for (const auto& [m, c] : a.t_) r.t_.emplace(m, c * s);
  return r;
}

MPoly MPoly::derivative(std::size_t v) const {
  MPoly r(n_);
  for (const auto& [m, c] : t_)
    if (m[v] > 0) {
      Monomial m2 = m;
      --m2[v];
      r.add_term(m2, c * FieldElem(static_cast<long>(m[v])));
    }
  return r;
}

MPoly MPoly::shift(std::size_t v, int k) const {
  MPoly r(n_);
  for (const auto& [m, c] : t_) {
    Monomial m2 = m;
    m2[v] += k;
    r.t_.emplace(std::move(m2), c);
  }
  return r;
}

MPoly MPoly::monic() const {
  if (t_.empty()) return *this;
  return *this * lead_coeff().inverse();
}

std::string MPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.to_string() << ")";
    for (std::size_t i = 0; i < n_; ++i)
      if (it->first[i] > 0) os << "*x" << i << (it->first[i] > 1 ? "^" + std::to_string(it->first[i]) : "");
  }
  return os.str();
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw DivisionByZero("multivariate division by zero");
  const std::size_t n = std::max(a.nvars(), b.nvars());
  MPoly q(n), r = a;
  const auto& [mb, cb] = *b.terms().rbegin();
  const FieldElem inv = cb.inverse();
  while (!r.is_zero()) {
    const auto& [mr, cr] = *r.terms().rbegin();
    MPoly::Monomial m(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = mr[i] - mb[i];
      if (m[i] < 0) throw Error("multivariate division is not exact");
    }
    MPoly t(n);
    t.add_term(m, cr * inv);
    q = q + t;
    r = r - t * b;
  }
  return q;
}

namespace {

int main_var(const MPoly& a, const MPoly& b) {
  for (std::size_t v = std::max(a.nvars(), b.nvars()); v-- > 0;)
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return static_cast<int>(v);
  return -1;
}

MPoly content(const MPoly& a, std::size_t v) {
  MPoly g(a.nvars());
  for (int k = 0; k <= a.degree_in(v); ++k) {
    MPoly c = a.coeff_in(v, k);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MPoly prem(const MPoly& a, const MPoly& b, std::size_t v) {
  const int db = b.degree_in(v);
  const MPoly lb = b.coeff_in(v, db);
  MPoly r = a;
  for (int dr = r.degree_in(v); !r.is_zero() && dr >= db; dr = r.degree_in(v)) {
    MPoly lr = r.coeff_in(v, dr);
    r = r * lb - (lr * b).shift(v, dr - db);
  }
  return r;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const int v0 = main_var(a, b);
  if (v0 < 0) return MPoly::constant(std::max(a.nvars(), b.nvars()), FieldElem(1));
  const auto v = static_cast<std::size_t>(v0);
  if (a.degree_in(v) <= 0) return gcd(a, content(b, v));
  if (b.degree_in(v) <= 0) return gcd(content(a, v), b);
  MPoly ca = content(a, v), cb = content(b, v);
  MPoly c = gcd(ca, cb);
  MPoly p = exact_div(a, ca), q = exact_div(b, cb);
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
  while (!q.is_zero() && q.degree_in(v) > 0) {
    MPoly r = prem(p, q, v);
    p = q;
    if (r.is_zero()) {
      q = r;
      break;
    }
    q = exact_div(r, content(r, v)).monic();
  }
  // q nonzero of degree 0 in v: p and q coprime in v
  if (!q.is_zero()) return c.monic();
  return (c * exact_div(p, content(p, v))).monic();
}

}  // namespace cll::pef
