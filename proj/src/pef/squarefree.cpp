#include "cll/pef/squarefree.hpp"

#include <algorithm>
#include <numeric>

#include "cll/pef/mpoly.hpp"

namespace cll::pef {

namespace {

using Row = std::vector<Integer>;

// Row-style Hermite reduction; returns the nonzero rows with their pivot columns.
std::vector<std::pair<Row, std::size_t>> hermite(std::vector<Row> rows, std::size_t D) {
  std::vector<std::pair<Row, std::size_t>> out;
  std::size_t top = 0;
  for (std::size_t j = 0; j < D && top < rows.size(); ++j) {
    for (;;) {
      // smallest nonzero |entry| in column j among rows[top..] goes to top
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r)
        if (sgn(rows[r][j]) != 0 && (best == rows.size() || abs(rows[r][j]) < abs(rows[best][j]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (sgn(rows[r][j]) == 0) continue;
        Integer q = rows[r][j] / rows[top][j];  // truncating
        for (std::size_t c = j; c < D; ++c) rows[r][c] -= q * rows[top][c];
        if (sgn(rows[r][j]) != 0) clean = false;
      }
      if (clean) {
        if (sgn(rows[top][j]) < 0)
          for (auto& x : rows[top]) x = -x;
        out.emplace_back(rows[top], j);
        ++top;
        break;
      }
    }
  }
  return out;
}

}  // namespace

IntegralBasis integral_basis(const std::vector<FieldElem>& lambdas, const FieldPtr& K) {
  const std::size_t D = static_cast<std::size_t>(K->degree());
  Integer den = 1;
  std::vector<std::vector<Rational>> cs;
  for (const auto& l : lambdas) {
    cs.push_back(algebra::in_field(K, l).coords());
    for (const auto& x : cs.back()) den = lcm(den, Integer(x.get_den()));
  }
  std::vector<Row> rows;
  for (const auto& c : cs) {
    Row r;
    for (const auto& x : c) r.push_back(Integer(x * den));
    rows.push_back(std::move(r));
  }
  auto h = hermite(rows, D);
  IntegralBasis out;
  for (const auto& [r, piv] : h) {
    std::vector<Rational> c;
    for (const auto& x : r) c.emplace_back(Rational(x) / den);
    out.basis.emplace_back(K, std::move(c));
  }
  for (Row r : rows) {
    std::vector<Integer> co(h.size(), Integer(0));
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& [b, piv] = h[i];
      if (sgn(r[piv]) == 0) continue;
      co[i] = r[piv] / b[piv];
      for (std::size_t c = 0; c < D; ++c) r[c] -= co[i] * b[c];
    }
    if (std::any_of(r.begin(), r.end(), [](const Integer& x) { return sgn(x) != 0; }))
      throw Error("integral basis reconstruction failed");
    out.coords.push_back(std::move(co));
  }
  return out;
}

namespace {

// f1, f2 as polynomials in t and y_i = e^{a_i t} over one exponent lattice
struct Encoded {
  IntegralBasis ib;
  FieldElem base;  // exponent of the dropped monomial factor
  std::vector<MPoly> polys;
};

Encoded encode(const FieldPtr& K, const std::vector<const Pef*>& fs) {
  std::vector<FieldElem> lambdas;
  for (const Pef* f : fs)
    for (const auto& t : f->terms()) lambdas.push_back(t.exponent);
  Encoded out{integral_basis(lambdas, K), algebra::in_field(K, FieldElem(0)), {}};
  const auto& ib = out.ib;
  const std::size_t n = ib.basis.size(), nv = n + 1;
  std::vector<long> lo(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      if (!ib.coords[k][i].fits_slong_p()) throw Error("exponent lattice coordinates too large");
      lo[i] = std::min(lo[i], ib.coords[k][i].get_si());
    }
  for (std::size_t i = 0; i < n; ++i) out.base = out.base + ib.basis[i] * FieldElem(lo[i]);
  std::size_t k = 0;
  for (const Pef* f : fs) {
    MPoly F(nv);
    for (const auto& t : f->terms()) {
      MPoly::Monomial m(nv, 0);
      for (std::size_t i = 0; i < n; ++i) m[i + 1] = static_cast<int>(ib.coords[k][i].get_si() - lo[i]);
      for (std::size_t j = 0; j < t.coeff.size(); ++j) {
        m[0] = static_cast<int>(j);
        F.add_term(m, t.coeff[j]);
      }
      ++k;
    }
    out.polys.push_back(std::move(F));
  }
  return out;
}

Pef decode(const FieldPtr& K, const Encoded& enc, const MPoly& H) {
  const std::size_t n = enc.ib.basis.size();
  std::vector<Term> out;
  for (const auto& [m, c] : H.terms()) {
    FieldElem e = enc.base;
    for (std::size_t i = 0; i < n; ++i) e = e + enc.ib.basis[i] * FieldElem(static_cast<long>(m[i + 1]));
    out.push_back({KPoly::monomial(c, static_cast<std::size_t>(m[0])), e});
  }
  return Pef(K, std::move(out));
}

// conj(h) = c e^{mu t} h with mu imaginary; center the exponents and take a real combination
Pef realify(const Pef& h) {
  if (h.is_real()) return h;
  const FieldPtr& K = h.field();
  FieldElem mean = algebra::in_field(K, FieldElem(0));
  for (const auto& t : h.terms()) mean = mean + t.exponent;
  mean = mean / FieldElem(static_cast<long>(h.terms().size()));
  Pef g = h.shift_exponent(-mean.i_im());
  Pef s = g + g.conj();
  if (s.is_zero()) {
    FieldElem th = FieldElem::generator(K);
    s = (g - g.conj()) * (th - th.conj());
  }
  if (!s.is_real()) throw Error("square-free part is not conjugate-closed");
  return s;
}

}  // namespace

Pef square_free_part(const Pef& f) {
  if (f.is_zero()) throw DegenerateInput("square-free part of the zero PEF");
  const FieldPtr& K = f.field();
  Encoded enc = encode(K, {&f});
  const MPoly& F = enc.polys[0];
  MPoly G = F;
  for (std::size_t v = 0; v < F.nvars() && !G.is_constant(); ++v) G = gcd(G, F.derivative(v));
  Pef h = decode(K, enc, G.is_constant() ? F : exact_div(F, G));
  return f.is_real() ? realify(h) : h;
}

Pef pef_gcd(const Pef& f, const Pef& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  FieldPtr K = f.field()->degree() == 1 ? g.field() : f.field();
  Pef a = Pef(K) + f, b = Pef(K) + g;
  Encoded enc = encode(K, {&a, &b});
  Pef h = decode(K, enc, gcd(enc.polys[0], enc.polys[1]));
  return a.is_real() && b.is_real() ? realify(h) : h;
}

}  // namespace cll::pef
