#include <algorithm>

#include "cll/algebra/factor.hpp"
#include "cll/algebra/number_field.hpp"

namespace cll::algebra {

namespace {

// Newton interpolation through (x_k, y_k).
QPoly interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly p;
  for (std::size_t k = n; k-- > 0;) p = p * QPoly{Rational(-xs[k]), Rational(1)} + QPoly::constant(ys[k]);
  return p;
}

KPoly shift(const KPoly& g, const FieldElem& c) {
  // g(x + c)
  return g.compose(KPoly{c, FieldElem(1)});
}

KPoly into(const FieldPtr& K, const KPoly& g) {
  std::vector<FieldElem> c;
  for (const auto& x : g.coeffs()) c.push_back(x.field() ? x : FieldElem(K, {x.coords()[0]}));
  return KPoly(std::move(c));
}

}  // namespace

QPoly norm(const FieldPtr& K, const KPoly& g) {
  if (g.is_zero()) return {};
  if (!K || K->degree() == 1) {
    std::vector<Rational> c;
    for (const auto& x : g.coeffs()) c.push_back(x.coords()[0]);
    return QPoly(std::move(c));
  }
  const int n = g.degree() * K->degree();
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= n; ++k) {
    Rational x0(k);
    FieldElem v(K, {Rational(0)});
    for (std::size_t i = g.size(); i-- > 0;) v = v * FieldElem(x0) + g[i];
    xs.push_back(x0);
    ys.push_back(det(mult_matrix(v)));
  }
  return interpolate(xs, ys);
}

std::vector<KPoly> factor_over(const FieldPtr& K, const KPoly& g0) {
  if (g0.degree() <= 0) return {};
  KPoly g = into(K, g0).monic();
  if (g.degree() == 1) return {g};
  if (K->degree() == 1) {
    QPoly q = norm(K, g);
    std::vector<KPoly> out;
    for (const auto& f : irreducible_factors(q)) out.push_back(into(K, to_kpoly(f)));
    return out;
  }
  FieldElem theta = FieldElem::generator(K);
  for (long s = 0; s < 64; s = s > 0 ? -s : -s + 1) {
    FieldElem st = theta * FieldElem(s);
    KPoly h = shift(g, -st);
    QPoly N = norm(K, h);
    if (gcd(N, N.derivative()).degree() > 0) continue;
    auto facs = irreducible_factors(N);
    if (facs.size() == 1) return {g};
    std::vector<KPoly> out;
    for (const auto& f : facs) {
      KPoly hi = gcd(h, into(K, to_kpoly(f)));
      out.push_back(shift(hi, st).monic());
    }
    return out;
  }
  throw Error("no square-free norm found while factoring over a number field");
}

SplittingField splitting_field(const QPoly& p) {
  FieldPtr K = NumberField::rationals();
  SplittingField out{K, {}};
  if (p.degree() <= 0) return out;
  QPoly sf = p.squarefree_part();

  std::vector<FieldElem> roots;
  std::vector<long> comb;  // theta = sum comb[i] * roots[i]
  std::vector<KPoly> pending = factor_over(K, to_kpoly(sf));
  for (;;) {
    std::vector<KPoly> nonlinear;
    for (const auto& f : pending) {
      if (f.degree() == 1) {
        FieldElem r = -(f[0] / f[1]);
        // the root adjoined last comes back as a linear factor
        if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
        roots.push_back(r);
        comb.push_back(0);
      } else {
        nonlinear.push_back(f);
      }
    }
    if (nonlinear.empty()) break;
    const KPoly& f = nonlinear[0];
    const FieldElem theta = FieldElem::generator(K);

    long s = 0;
    QPoly m2;
    for (;; s = s > 0 ? -s : -s + 1) {
      m2 = norm(K, shift(f, -(theta * FieldElem(s))));
      if (gcd(m2, m2.derivative()).degree() == 0) break;
      if (s > 64) throw Error("no primitive element found");
    }
    m2 = m2.monic();
    AlgebraicNumber gamma0 = AlgebraicNumber::roots_of(m2).front();
    FieldPtr K2 = NumberField::make(m2, gamma0);
    FieldElem gamma = FieldElem::generator(K2);

    // theta expressed in K2: the common root of m(z) and f(gamma - s z; z)
    FieldElem R;
    if (K->degree() == 1) {
      R = FieldElem(K2, {theta.coords()[0]});
    } else {
      KPoly z{FieldElem(K2, {Rational(0)}), FieldElem(K2, {Rational(1)})};
      KPoly lin = KPoly::constant(gamma) - z * FieldElem(K2, {Rational(s)});
      KPoly acc;
      for (std::size_t i = f.size(); i-- > 0;) {
        // coefficient f_i(theta) -> f_i(z)
        KPoly ci;
        const auto& cc = f[i].coords();
        for (std::size_t j = cc.size(); j-- > 0;) ci = ci * z + KPoly::constant(FieldElem(K2, {cc[j]}));
        acc = acc * lin + ci;
      }
      KPoly G = gcd(into(K2, to_kpoly(K->minpoly())), acc);
      if (G.degree() != 1) throw Error("primitive element reconstruction failed");
      R = -(G[0] / G[1]);
    }

    for (auto& r : roots) r = substitute(r, R);
    FieldElem beta = gamma - R * FieldElem(s);
    roots.push_back(beta);
    for (auto& k : comb) k *= s;
    comb.push_back(1);

    std::vector<KPoly> next;
    for (const auto& g : nonlinear) {
      std::vector<FieldElem> c;
      for (const auto& x : g.coeffs()) c.push_back(substitute(x, R));
      for (auto& h : factor_over(K2, KPoly(std::move(c)))) next.push_back(std::move(h));
    }
    pending = std::move(next);
    K = K2;
  }

  // complex conjugation permutes the roots; read it off numerically
  if (K->degree() > 1) {
    const std::size_t n = roots.size();
    for (long bits = 16;; bits *= 2) {
      std::vector<Ball> b;
      for (const auto& r : roots) b.push_back(r.ball(bits));
      bool ok = true;
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n && ok; ++i) {
        int hits = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (!disjoint(b[i].conj(), b[j])) {
            ++hits;
            perm[i] = j;
          }
        ok = hits == 1;
      }
      if (ok) {
        FieldElem ct(K, {Rational(0)});
        for (std::size_t i = 0; i < n; ++i)
          if (comb[i] != 0) ct = ct + roots[perm[i]] * FieldElem(comb[i]);
        K->set_conj_theta(ct.coords());
        break;
      }
      if (bits > 1 << 14) throw Error("could not separate roots numerically");
    }
  }
  out.K = K;
  for (auto& r : roots) out.roots.push_back(r.field() ? r : FieldElem(K, {r.coords()[0]}));
  return out;
}

}  // namespace cll::algebra
