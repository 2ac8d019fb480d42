#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cll/pef/exist.hpp"

using namespace cll::algebra;
using namespace cll::pef;
using cll::PreconditionViolation;

static QPoly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

static FieldPtr gaussian() {
  static FieldPtr K = NumberField::make(P({1, 0, 1}), AlgebraicNumber(P({1, 0, 1}), CQ(0, 1), make_rational(1, 2)));
  return K;
}

// e^{it} + e^{-it}
static Pef two_cos() {
  FieldPtr K = gaussian();
  FieldElem i = FieldElem::generator(K);
  return Pef::exp(i, K) + Pef::exp(-i, K);
}

static double approx(const RealFunction& f, double t) {
  return to_double(pef_eval_approx(f, Rational(t), make_rational(1, 1000000000000L)));
}

TEST_CASE("pef arithmetic") {
  auto K = NumberField::rationals();
  Pef e = Pef::exp(FieldElem(1), K), em = Pef::exp(FieldElem(-1), K);
  CHECK(e * em == Pef::constant(FieldElem(1)));
  Pef c = two_cos();
  // (2cos t)^2 = e^{2it} + 2 + e^{-2it}
  Pef sq = c * c;
  CHECK(sq.terms().size() == 3);
  CHECK(sq.coeff_of(FieldElem(0)) == KPoly{FieldElem(2)});
  CHECK(c.is_real());
  CHECK_FALSE(Pef::exp(FieldElem::generator(gaussian()), gaussian()).is_real());
  CHECK((c - c).is_zero());
  // (t e^{t})' = (1 + t) e^{t}
  Pef te = Pef::t() * e;
  CHECK(te.derivative() == e + te);
  CHECK(c.derivative().derivative() == -c);
  CHECK(Pef::t().degree() == 1);
  CHECK(Pef::constant(FieldElem(3)).is_polynomial());
}

TEST_CASE("pef evaluation") {
  RealPef e(Pef::exp(FieldElem(1), NumberField::rationals()));
  CHECK(std::abs(approx(e, 1) - std::exp(1.0)) < 1e-11);
  RealPef c(two_cos());
  double t = 355.0 / 113.0;
  CHECK(std::abs(to_double(pef_eval_approx(c, make_rational(355, 113), make_rational(1, 1000000000000L))) - 2 * std::cos(t)) < 1e-9);
  CHECK(std::abs(approx(c, 0.25) - 2 * std::cos(0.25)) < 1e-11);
  CHECK_THROWS_AS(RealPef(Pef::exp(FieldElem::generator(gaussian()), gaussian())), PreconditionViolation);
}

TEST_CASE("exact signs") {
  RealPef c(two_cos());
  CHECK(pef_sign_at(c, Rational(0)) == 1);
  CHECK(pef_sign_at(c, Rational(2)) == -1);
  CHECK(pef_sign_at(c, make_rational(355, 226)) == -1);  // just above pi/2
  RealPef lin(Pef::polynomial(P({-1, 2})));
  CHECK(pef_sign_at(lin, make_rational(1, 2)) == 0);
  // e^t - 1 at 0 is exactly zero
  RealPef em1(Pef::exp(FieldElem(1), NumberField::rationals()) - Pef::constant(FieldElem(1)));
  CHECK(pef_sign_at(em1, Rational(0)) == 0);
  CHECK(pef_sign_at(em1, make_rational(1, 1000)) == 1);
}

TEST_CASE("lipschitz bounds") {
  RealPef c(two_cos());
  CHECK(lipschitz_bound(c, Rational(0), Rational(10)) >= 2);
  RealPef t(Pef::t());
  CHECK(lipschitz_bound(t, Rational(0), Rational(1)) >= 1);
  RealPef k(Pef::constant(FieldElem(5)));
  CHECK(lipschitz_bound(k, Rational(0), Rational(1)) >= 0);
}

TEST_CASE("exist") {
  RealPef lin(Pef::polynomial(P({-1, 2})));  // 2t - 1
  CHECK(exist_root(lin, Rational(0), Rational(1), make_rational(1, 4)));
  RealPef sq(Pef::polynomial(P({1, 0, 1})));
  CHECK_FALSE(exist_root(sq, Rational(0), Rational(1), make_rational(1, 2)));
  RealPef c(two_cos());
  CHECK(exist_root(c, Rational(1), Rational(2), make_rational(1, 2)));
  CHECK_FALSE(exist_root(c, Rational(2), Rational(4), make_rational(1, 2)));
  CHECK_THROWS_AS(exist_root(lin, Rational(0), make_rational(1, 2), Rational(1)), PreconditionViolation);
}

#include "cll/pef/mpoly.hpp"
#include "cll/pef/squarefree.hpp"

TEST_CASE("multivariate gcd") {
  const std::size_t n = 3;
  MPoly x = MPoly::variable(n, 0), y = MPoly::variable(n, 1), z = MPoly::variable(n, 2);
  MPoly one = MPoly::constant(n, FieldElem(1));
  MPoly a = x * y + z, b = x - y * z + one, c = y * y + one;
  MPoly g = gcd(a * a * c, a * b);
  CHECK(g == a.monic());
  CHECK(gcd(a, b).is_constant());
  CHECK(exact_div(a * b, b) == a);
  CHECK_THROWS(exact_div(a, b));
}

TEST_CASE("integral basis") {
  auto K = NumberField::rationals();
  auto ib = integral_basis({FieldElem(2), FieldElem(3)}, K);
  REQUIRE(ib.basis.size() == 1);
  CHECK(ib.basis[0] == FieldElem(1));
  CHECK(ib.coords[0][0] == 2);
  CHECK(ib.coords[1][0] == 3);
  CHECK(integral_basis({FieldElem(0)}, K).basis.empty());
  FieldPtr G = gaussian();
  FieldElem i = FieldElem::generator(G);
  auto ic = integral_basis({i, -i, i * FieldElem(2)}, G);
  REQUIRE(ic.basis.size() == 1);
  CHECK(ic.basis[0] == i);
  CHECK(ic.coords[1][0] == -1);
  CHECK(ic.coords[2][0] == 2);
  // 1/2 and 1/3 -> 1/6
  auto id = integral_basis({make_rational(1, 2), make_rational(1, 3)}, K);
  REQUIRE(id.basis.size() == 1);
  CHECK(id.basis[0] == FieldElem(make_rational(1, 6)));
}

TEST_CASE("square-free part") {
  auto K = NumberField::rationals();
  Pef e = Pef::exp(FieldElem(1), K), one = Pef::constant(FieldElem(1));
  Pef f = (e - one) * (e - one);
  Pef s = square_free_part(f);
  CHECK(s.is_real());
  // one root at 0, simple
  RealPef rs(s);
  CHECK(pef_sign_at(rs, Rational(0)) == 0);
  CHECK(RealPef(s.derivative()).sign_at(Rational(0)) != 0);
  // (t e^t)^2 -> t e^{ct}
  Pef te = Pef::t() * e;
  Pef s2 = square_free_part(te * te);
  REQUIRE(s2.terms().size() == 1);
  CHECK(s2.terms()[0].coeff.degree() == 1);
  CHECK(s2.terms()[0].coeff[0].is_zero());
  // irreducible input unchanged up to a scalar
  Pef g = e - Pef::constant(FieldElem(2));
  Pef s3 = square_free_part(g);
  CHECK(s3.terms().size() == 2);
  CHECK((s3 * s3.coeff_of(FieldElem(1))[0].inverse()) == g);
  // (2 cos t)^2 -> multiple of 2 cos t
  Pef c = two_cos();
  Pef s4 = square_free_part(c * c);
  CHECK(s4.is_real());
  CHECK(s4.terms().size() == 2);
  CHECK_THROWS_AS(square_free_part(Pef()), cll::DegenerateInput);
}

#include "cll/pef/isolate.hpp"

static bool holds(const IsolatingInterval& iv, double x) {
  if (iv.exact) return std::abs(to_double(*iv.exact) - x) < 1e-12;
  return to_double(iv.low) < x && x < to_double(iv.high);
}

TEST_CASE("isolation of simple cases") {
  auto a = isolate_roots(Pef::polynomial(P({-1, 1})), Rational(0), Rational(2));
  REQUIRE(a.size() == 1);
  CHECK(a[0].contains(Rational(1)));
  Pef g = Pef::exp(FieldElem(1), NumberField::rationals()) - Pef::constant(FieldElem(2));
  auto b = isolate_roots(g, Rational(0), Rational(2));
  REQUIRE(b.size() == 1);
  CHECK(holds(b[0], std::log(2.0)));
  auto r = refine_isolation(g, b[0], make_rational(1, 1000000));
  CHECK(r.width() <= make_rational(1, 1000000));
  CHECK(holds(r, std::log(2.0)));
  // exact polynomial roots found at midpoints
  auto c = isolate_roots(Pef::polynomial(P({-6, 11, -6, 1})), Rational(0), Rational(4));
  REQUIRE(c.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(holds(c[k], k + 1.0));
  // no roots
  CHECK(isolate_roots(Pef::polynomial(P({1, 0, 1})), Rational(-3), Rational(3)).empty());
}

TEST_CASE("isolation of 2 cos t") {
  Pef c = two_cos();
  IsolationTrace tr;
  auto iv = isolate_roots(c, Rational(0), Rational(10), {}, &tr);
  REQUIRE(iv.size() == 3);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 3; ++k) {
    CHECK(holds(iv[k], (2 * k + 1) * pi / 2));
    auto r = refine_isolation(c, iv[k], make_rational(1, 1000000));
    CHECK(r.width() <= make_rational(1, 1000000));
    CHECK(holds(r, (2 * k + 1) * pi / 2));
  }
  CHECK(!tr.lines.empty());
}

TEST_CASE("isolation with roots at the window edge and at 0") {
  auto K = NumberField::rationals();
  Pef e = Pef::exp(FieldElem(1), K), one = Pef::constant(FieldElem(1));
  // (e^t - 1)^2: only root 0
  auto a = isolate_roots((e - one) * (e - one), Rational(-1), Rational(1));
  REQUIRE(a.size() == 1);
  CHECK(a[0].exact);
  CHECK(isolate_roots((e - one), Rational(0), Rational(1)).empty());
  // t (t - 1) on (0, 1): both roots on the boundary
  CHECK(isolate_roots(Pef::polynomial(P({0, -1, 1})), Rational(0), Rational(1)).empty());
  // 1 - e^{-t} - t/4 has roots 0 and about 3.92
  Pef h = one - Pef::exp(FieldElem(-1), K) - Pef::t() * FieldElem(make_rational(1, 4));
  auto b = isolate_roots(h, Rational(0), Rational(5));
  REQUIRE(b.size() == 1);
  double x = to_double(b[0].low), y = to_double(b[0].high);
  CHECK(1 - std::exp(-x) - x / 4 > 0);
  CHECK(1 - std::exp(-y) - y / 4 < 0);
}

TEST_CASE("damped oscillation") {
  // 1/5 + e^{-t/4} cos(2t) on (0, 10)
  FieldPtr K = gaussian();
  FieldElem i = FieldElem::generator(K);
  FieldElem lam = FieldElem(make_rational(-1, 4)) + i * FieldElem(2);
  Pef f = Pef::constant(FieldElem(make_rational(1, 5))) +
          (Pef::exp(lam, K) + Pef::exp(lam.conj(), K)) * FieldElem(make_rational(1, 2));
  auto iv = isolate_roots(f, Rational(0), Rational(10));
  // grid count of sign changes
  int changes = 0;
  auto F = [](double t) { return 0.2 + std::exp(-t / 4) * std::cos(2 * t); };
  for (int k = 0; k < 100000; ++k)
    if (F(k * 1e-4) * F((k + 1) * 1e-4) < 0) ++changes;
  CHECK(static_cast<int>(iv.size()) == changes);
  for (const auto& v : iv) CHECK(F(to_double(v.low)) * F(to_double(v.high)) < 0);
}

#include "cll/pef/symbolic_time.hpp"

static SymbolicTime first_root(const Pef& f, const Rational& B, const Rational& C) {
  RealPef s(square_free_part(f));
  auto iv = isolate_square_free(s, B, C);
  REQUIRE(!iv.empty());
  return SymbolicTime(std::make_shared<RootRef>(s, iv[0]));
}

TEST_CASE("compare symbolic times") {
  CHECK(compare_times(SymbolicTime(make_rational(3, 2)), SymbolicTime(make_rational(3, 2))) == Cmp::EQ);
  Pef g = Pef::exp(FieldElem(1), NumberField::rationals()) - Pef::constant(FieldElem(2));
  SymbolicTime ln2 = first_root(g, Rational(0), Rational(1));
  CHECK(compare_times(ln2, SymbolicTime(Rational(1))) == Cmp::LT);
  CHECK(compare_times(SymbolicTime(Rational(1)), ln2) == Cmp::GT);
  CHECK(compare_times(ln2, ln2) == Cmp::EQ);
  CHECK(compare_times(ln2 + Rational(1), ln2, Rational(1)) == Cmp::EQ);
  SymbolicTime one = first_root(Pef::polynomial(P({-1, 1})), Rational(0), Rational(3));
  SymbolicTime three = first_root(Pef::polynomial(P({-3, 1})), Rational(2), Rational(4));
  CHECK(compare_times(one, three, Rational(-2)) == Cmp::EQ);
  CHECK(compare_times(one, three, Rational(-1)) == Cmp::LT);
  // ln 2 against ln 4 / 2, written differently
  Pef g4 = Pef::exp(FieldElem(2), NumberField::rationals()) - Pef::constant(FieldElem(4));
  SymbolicTime ln2b = first_root(g4, Rational(0), Rational(1));
  CHECK(compare_times(ln2, ln2b) == Cmp::EQ);
  // pi/2 vs ln 5
  Pef g5 = Pef::exp(FieldElem(1), NumberField::rationals()) - Pef::constant(FieldElem(5));
  SymbolicTime ln5 = first_root(g5, Rational(1), Rational(2));
  SymbolicTime half_pi = first_root(two_cos(), Rational(1), Rational(2));
  CHECK(compare_times(half_pi, ln5) == Cmp::LT);  // 1.5708 < 1.6094
  CHECK(std::abs(half_pi.approx() - std::acos(-1.0) / 2) < 1e-9);
}

TEST_CASE("signs at symbolic times") {
  Pef g = Pef::exp(FieldElem(1), NumberField::rationals()) - Pef::constant(FieldElem(2));
  SymbolicTime ln2 = first_root(g, Rational(0), Rational(1));
  CHECK(sign_at(RealPef(g), ln2) == 0);
  CHECK(sign_at(RealPef(g), ln2 + make_rational(1, 100)) > 0);
  CHECK(sign_at(RealPef(Pef::polynomial(P({-1, 2}))), ln2) > 0);  // 2 ln 2 - 1 > 0
  CHECK(sign_at(RealPef(two_cos()), ln2) > 0);
}

TEST_CASE("shifted and squared functions") {
  RealPef c(two_cos());
  auto sh = std::make_shared<ShiftedPef>(c, Rational(1));
  CHECK(std::abs(approx(*sh, 0.5) - 2 * std::cos(1.5)) < 1e-10);
  auto sq = std::make_shared<SquareSum>(std::make_shared<RealPef>(c), sh);
  CHECK(std::abs(approx(*sq, 0.5) - (4 * std::cos(0.5) * std::cos(0.5) + 4 * std::cos(1.5) * std::cos(1.5))) < 1e-10);
  // cos t and cos(t + 1) never vanish together
  CHECK_FALSE(exist_root(*sq, Rational(0), Rational(3), make_rational(1, 2)));
  CHECK(sq->lipschitz(Rational(0), Rational(3)) > 0);
}
