#include "cll/pef/isolate.hpp"

#include <algorithm>

#include "cll/pef/exist.hpp"
#include "cll/pef/squarefree.hpp"

namespace cll::pef {

std::string IsolatingInterval::to_string() const {
  if (exact) return "[" + algebra::to_string(*exact) + "]";
  return "(" + algebra::to_string(low) + ", " + algebra::to_string(high) + ")";
}

namespace {

using Ivs = std::vector<IsolatingInterval>;

void note(IsolationTrace* tr, const std::string& s) {
  if (tr) tr->lines.push_back(s);
}

// s * e^{-ct} with c the largest real part of an exponent (smallest on a
// window left of 0): same roots, but no term decays or grows across the window
RealPef balanced(const RealPef& s, const Rational& lo) {
  const Pef& f = s.pef();
  if (f.terms().empty()) return s;
  const bool right = sgn(lo) >= 0;
  const FieldElem half(Rational(1, 2));
  auto re = [&](const FieldElem& e) { return (e + e.conj()) * half; };
  FieldElem best = re(f.terms()[0].exponent);
  for (const auto& t : f.terms()) {
    FieldElem r = re(t.exponent);
    int c = (r - best).re_sign();
    if (right ? c > 0 : c < 0) best = r;
  }
  if (best.is_zero()) return s;
  return RealPef(f.shift_exponent(-best));
}

int sign_of(const FieldElem& x) { return x.is_zero() ? 0 : x.re_sign(); }

int poly_sign(const KPoly& p, const Rational& t) {
  FieldElem acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * FieldElem(t) + p[i];
  return sign_of(acc);
}

std::vector<KPoly> sturm_chain(const KPoly& p) {
  std::vector<KPoly> s{p, p.derivative()};
  while (!s.back().is_zero()) {
    KPoly r = s[s.size() - 2] % s.back();
    if (r.is_zero()) break;
    s.push_back(KPoly() - r);
  }
  return s;
}

int variations(const std::vector<KPoly>& s, const Rational& t) {
  int v = 0, last = 0;
  for (const auto& p : s) {
    int g = poly_sign(p, t);
    if (g == 0) continue;
    if (last != 0 && g != last) ++v;
    last = g;
  }
  return v;
}

// Real roots of a square-free real polynomial over K in (a, b); p(a), p(b) nonzero.
Ivs isolate_polynomial(const KPoly& p, const Rational& a, const Rational& b) {
  Ivs out;
  if (p.degree() <= 0) return out;
  auto chain = sturm_chain(p);
  struct Job {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Job> stack{{a, b, variations(chain, a), variations(chain, b)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    const int n = j.vlo - j.vhi;
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({j.lo, j.hi, std::nullopt});
      continue;
    }
    Rational m = (j.lo + j.hi) / 2;
    if (poly_sign(p, m) == 0) {
      out.push_back(IsolatingInterval::point(m));
      // shrink away from the exact root until both sides are root-free near m
      Rational w = (j.hi - j.lo) / 4;
      while (poly_sign(p, m - w) == 0 || poly_sign(p, m + w) == 0 ||
             variations(chain, m - w) - variations(chain, m + w) != 1)
        w /= 2;
      stack.push_back({j.lo, m - w, j.vlo, variations(chain, m - w)});
      stack.push_back({m + w, j.hi, variations(chain, m + w), j.vhi});
      continue;
    }
    int vm = variations(chain, m);
    stack.push_back({j.lo, m, j.vlo, vm});
    stack.push_back({m, j.hi, vm, j.vhi});
  }
  return out;
}

// Smallest j with s^{(j)}(a) != 0, and that derivative.
Pef first_nonvanishing(const RealPef& s, const Rational& a, int cap) {
  Pef d = s.pef();
  for (int j = 0; j <= cap; ++j) {
    if (RealPef(d).sign_at(a) != 0) return d;
    d = d.derivative();
  }
  throw Error("no nonvanishing derivative found at " + algebra::to_string(a));
}

class Isolator {
 public:
  Isolator(const IsolationOptions& opt, IsolationTrace* tr) : opt_(opt), tr_(tr) {}

  Ivs run(const RealPef& s, const Rational& B, const Rational& C, int depth) {
    if (!(B < C)) return {};
    if (sgn(B) < 0 && sgn(C) > 0) {
      Ivs out = run(s, B, Rational(0), depth);
      if (s.sign_at(Rational(0)) == 0) out.push_back(IsolatingInterval::point(Rational(0)));
      Ivs right = run(s, Rational(0), C, depth);
      out.insert(out.end(), right.begin(), right.end());
      return out;
    }
    Rational lo = B, hi = C;
    if (s.sign_at(lo) == 0) lo = lo + clear_right(s, lo, hi, opt_.delta);
    if (s.sign_at(hi) == 0) hi = hi - clear_left(s, hi, lo, opt_.delta);
    return window(s, lo, hi, depth);
  }

 private:
  // s nonzero at lo and hi
  Ivs window(const RealPef& s, const Rational& lo, const Rational& hi, int depth) {
    if (depth > opt_.max_depth) throw Error("derivative chain exceeded the depth cap");
    const Pef& f = s.pef();
    if (f.terms().size() == 1 && f.terms()[0].exponent.is_real()) {
      note(tr_, "polynomial terminal: " + f.to_string());
      KPoly p = f.terms()[0].coeff;
      return isolate_polynomial(gcd(p, p.derivative()).degree() > 0 ? p / gcd(p, p.derivative()) : p, lo, hi);
    }
    if (f.has_exponent(FieldElem(0))) {
      Pef d = square_free_part(f.derivative());
      note(tr_, "derivative: " + d.to_string());
      RealPef ds(d);
      Ivs inner = run(ds, lo, hi, depth + 1);
      return lift(s, ds, inner, lo, hi);
    }
    for (const auto& t : f.terms())
      if (t.exponent.is_real()) {
        note(tr_, "strip exp(" + t.exponent.to_string() + " t)");
        return window(RealPef(f.shift_exponent(-t.exponent)), lo, hi, depth + 1);
      }
    note(tr_, "oscillatory terminal: " + f.to_string());
    return oscillatory(s, lo, hi);
  }

  // Roots of s from an isolation of the roots of d (same roots as s')
  Ivs lift(const RealPef& s, const RealPef& d, Ivs inner, const Rational& lo, const Rational& hi) {
    const RealPef ds(s.pef().derivative()), sb = balanced(s, lo);
    std::sort(inner.begin(), inner.end(), [](const auto& x, const auto& y) { return x.low < y.low; });
    for (auto& iv : inner) {
      Rational u = iv.low, l = iv.high;
      for (;;) {
        if (u == l) {
          if (s.sign_at(u) == 0) throw Error("repeated root away from 0 in a square-free PEF");
          break;
        }
        // s' vanishes once in [u, l], so s is monotone or unimodal there; with
        // equal end signs it is root free unless it dips between them
        const int su = s.sign_at(u);
        if (su != 0 && s.sign_at(l) == su) {
          if (ds.sign_at(u) == su || ds.sign_at(l) == -su) break;
          if (!exist_root(sb, u, l, opt_.delta)) break;
        }
        Rational m = (u + l) / 2;
        int dm = d.sign_at(m);
        if (dm == 0) {
          u = l = m;
        } else if (d.sign_at(u) * dm < 0) {
          l = m;
        } else {
          u = m;
        }
      }
      iv.low = u;
      iv.high = l;
      note(tr_, "shrunk derivative interval to [" + algebra::to_string(u) + ", " + algebra::to_string(l) + "]");
    }
    Ivs out;
    Rational left = lo;
    const int sl0 = s.sign_at(lo);
    int sl = sl0;
    for (std::size_t j = 0; j <= inner.size(); ++j) {
      Rational right = j < inner.size() ? inner[j].low : hi;
      int sr = s.sign_at(right);
      if (sl * sr < 0) out.push_back({left, right, std::nullopt});
      if (j < inner.size()) {
        left = inner[j].high;
        sl = s.sign_at(left);
      }
    }
    return out;
  }

  Ivs oscillatory(const RealPef& s0, const Rational& lo, const Rational& hi) {
    Ivs out;
    const RealPef s = balanced(s0, lo);
    const RealPef g = balanced(RealPef(square_free_part(s.pef().derivative())), lo);
    std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      if (!exist_root(s, a, b, opt_.delta)) continue;
      if (g.sign_at(a) != 0 && g.sign_at(b) != 0 && !exist_root(g, a, b, opt_.delta)) {
        out.push_back({a, b, std::nullopt});
        continue;
      }
      Rational m = (a + b) / 2;
      if (s.sign_at(m) == 0) {
        out.push_back(IsolatingInterval::point(m));
        Rational wl = clear_left(s, m, a, opt_.delta), wr = clear_right(s, m, b, opt_.delta);
        stack.emplace_back(a, m - wl);
        stack.emplace_back(m + wr, b);
        continue;
      }
      stack.emplace_back(a, m);
      stack.emplace_back(m, b);
    }
    return out;
  }

  const IsolationOptions& opt_;
  IsolationTrace* tr_;
};

bool clear_on(const RealPef& g, const Rational& x, const Rational& y, const Rational& delta) {
  // g nonzero on the closed segment between x and y
  Rational a = std::min(x, y), b = std::max(x, y);
  return g.sign_at(a) != 0 && g.sign_at(b) != 0 && !exist_root(balanced(g, a), a, b, delta);
}

}  // namespace

Rational clear_right(const RealPef& s, const Rational& a, const Rational& C, const Rational& delta) {
  Pef dj = first_nonvanishing(s, a, 64);
  RealPef g(square_free_part(dj));
  for (Rational w = (C - a) / 2;; w /= 2) {
    if (s.sign_at(a + w) != 0 && clear_on(g, a, a + w, delta)) return w;
    if (w < algebra::pow2(-4096)) throw Error("could not clear a neighbourhood of a root");
  }
}

Rational clear_left(const RealPef& s, const Rational& c, const Rational& B, const Rational& delta) {
  Pef dj = first_nonvanishing(s, c, 64);
  RealPef g(square_free_part(dj));
  for (Rational w = (c - B) / 2;; w /= 2) {
    if (s.sign_at(c - w) != 0 && clear_on(g, c - w, c, delta)) return w;
    if (w < algebra::pow2(-4096)) throw Error("could not clear a neighbourhood of a root");
  }
}

std::vector<IsolatingInterval> isolate_square_free(const RealPef& s, const Rational& B, const Rational& C,
                                                   const IsolationOptions& opt, IsolationTrace* trace) {
  if (!(B < C)) throw PreconditionViolation("isolate_roots needs B < C");
  Isolator iso(opt, trace);
  Ivs out = iso.run(s, B, C, 0);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.low < y.low; });
  return out;
}

std::vector<IsolatingInterval> isolate_roots(const Pef& f, const Rational& B, const Rational& C,
                                             const IsolationOptions& opt, IsolationTrace* trace) {
  if (f.is_zero()) throw DegenerateInput("cannot isolate the roots of the zero PEF");
  RealPef s(square_free_part(f));
  note(trace, "square-free part: " + s.pef().to_string());
  return isolate_square_free(s, B, C, opt, trace);
}

IsolatingInterval refine_square_free(const RealPef& s, IsolatingInterval iv, const Rational& width) {
  if (iv.exact) return iv;
  int slo = s.sign_at(iv.low);
  if (slo == 0 || slo * s.sign_at(iv.high) >= 0) throw PreconditionViolation("interval does not bracket a simple root");
  while (iv.width() > width) {
    Rational m = (iv.low + iv.high) / 2;
    int sm = s.sign_at(m);
    if (sm == 0) return IsolatingInterval::point(m);
    if (sm * slo < 0) {
      iv.high = m;
    } else {
      iv.low = m;
    }
  }
  return iv;
}

IsolatingInterval refine_isolation(const Pef& f, const IsolatingInterval& iv, const Rational& width) {
  return refine_square_free(RealPef(square_free_part(f)), iv, width);
}

}  // namespace cll::pef
