#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cll/algebra/factor.hpp"

#include <cmath>

using namespace cll::algebra;

static QPoly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

TEST_CASE("parse rationals") {
  CHECK(parse_rational("0.025") == make_rational(1, 40));
  CHECK(parse_rational("-1/40") == make_rational(-1, 40));
  CHECK(parse_rational("1e-3") == make_rational(1, 1000));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("sturm") {
  QPoly p = P({-2, 0, 1});
  CHECK(real_root_count(p) == 2);
  CHECK(sturm_count(p, Rational(0), Rational(2)) == 1);
  CHECK(real_root_count(P({1, 0, 1})) == 0);
}

TEST_CASE("factor") {
  // x^4 - 10x^2 + 1 irreducible
  CHECK(irreducible_factors(P({1, 0, -10, 0, 1})).size() == 1);
  // (x^2-2)(x^2-3)
  auto f = irreducible_factors(P({6, 0, -5, 0, 1}));
  CHECK(f.size() == 2);
  // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
  auto g = irreducible_factors(P({-1, 0, 0, 0, 0, 0, 0, 0, 1}));
  CHECK(g.size() == 4);
  // Swinnerton-Dyer-like: (x^2+1)^2 (2x-1)^3 x
  auto h = factor(P({1, 0, 1}) * P({1, 0, 1}) * P({-1, 2}) * P({-1, 2}) * P({-1, 2}) * P({0, 1}));
  int total = 0;
  for (auto& [q, m] : h) total += q.degree() * m;
  CHECK(total == 8);
  CHECK(h.size() == 3);
  // product of many linears
  QPoly prod = P({1});
  for (long i = 1; i <= 7; ++i) prod *= P({-i, 3});
  CHECK(irreducible_factors(prod).size() == 7);
  // x^6 + ... irreducible cyclotomic 9: x^6+x^3+1
  CHECK(irreducible_factors(P({1, 0, 0, 1, 0, 0, 1})).size() == 1);
}

#include "cll/algebra/algebraic.hpp"
#include "cll/algebra/matrix.hpp"

static AlgebraicNumber sqrt_of(long n) {
  return AlgebraicNumber(P({-n, 0, 1}), CQ(Rational(std::sqrt(double(n)))), make_rational(1, 100));
}

TEST_CASE("ball exp") {
  Ball e = exp(Ball::exact(Rational(1), 80));
  CHECK(e.rad() < pow2(-60));
  CHECK(std::abs(to_double(e.mid().re) - 2.718281828459045) < 1e-14);
  Ball w = exp(Ball::exact(CQ(Rational(0), Rational(355, 226)), 80));  // ~ e^{i pi/2}
  CHECK(std::abs(to_double(w.mid().re)) < 1e-6);
  CHECK(std::abs(to_double(w.mid().im) - 1) < 1e-12);
}

TEST_CASE("complex roots") {
  auto r = isolate_complex_roots(P({5, -2, 1}), 30);
  REQUIRE(r.size() == 2);
  CHECK(!r[0].real);
  CHECK(std::abs(to_double(r[0].center.re) - 1) < 1e-8);
  auto s = isolate_complex_roots(P({1, 0, -10, 0, 1}), 40);
  CHECK(s.size() == 4);
  for (auto& b : s) CHECK(b.real);
}

TEST_CASE("algebraic arithmetic") {
  AlgebraicNumber r2 = sqrt_of(2), r3 = sqrt_of(3);
  CHECK(alg_is_zero(r2 + (-r2)));
  CHECK(alg_is_zero(r2 - r2));
  AlgebraicNumber two = r2 * r2;
  CHECK(two.is_rational());
  CHECK(*two.rational_value() == 2);
  AlgebraicNumber s = r2 + r3;
  CHECK(s.minpoly() == P({1, 0, -10, 0, 1}));
  CHECK(std::abs(to_double(s.refine(pow2(-30)).center().re) - 3.14626436994197) < 1e-8);
  AlgebraicNumber q = r2 / r3;
  CHECK(q.minpoly() == (P({-2, 0, 3})).monic());
  // field axioms
  AlgebraicNumber a = r2 + AlgebraicNumber(make_rational(1, 3)), b = r3, c = r2 * r3;
  CHECK(alg_is_zero((a + b) * c - (a * c + b * c)));
  CHECK(alg_is_zero((a * b) * c - a * (b * c)));
  CHECK(alg_is_zero(a * (AlgebraicNumber(1) / a) - AlgebraicNumber(1)));
  CHECK_THROWS_AS(r2 / (r2 - r2), cll::DivisionByZero);
}

TEST_CASE("refine and conj") {
  AlgebraicNumber r2 = sqrt_of(2);
  auto f = alg_refine(r2, make_rational(1, 1000000));
  CHECK(f.radius() <= make_rational(1, 1000000));
  CHECK(std::abs(to_double(f.center().re) - 1.41421356237) < 1e-6);
  CHECK(f == r2);
  AlgebraicNumber z(P({5, -2, 1}), CQ(1, 2), Rational(1));
  AlgebraicNumber zc = alg_conj(z);
  CHECK(zc != z);
  CHECK(zc.minpoly() == z.minpoly());
  CHECK(sgn(zc.refine(pow2(-10)).center().im) < 0);
  CHECK(alg_conj(r2) == r2);
  CHECK(*real_part(z).rational_value() == 1);
  CHECK(*imag_part(z).rational_value() == 2);
  CHECK(compare_re_im(zc, z) < 0);
}

TEST_CASE("char poly") {
  auto M = make_rational_matrix({{-1, 1}, {1, -1}});
  CHECK(char_poly(M) == P({0, 2, 1}));
  auto I = RationalMatrix::identity(2, Rational(0), Rational(1));
  CHECK(char_poly(I) == P({1, -2, 1}));
  auto R = make_rational_matrix({{0, -1}, {1, 0}});
  CHECK(char_poly(R) == P({1, 0, 1}));
}

#include "cll/algebra/number_field.hpp"

TEST_CASE("number field basics") {
  AlgebraicNumber i(P({1, 0, 1}), CQ(0, 1), make_rational(1, 2));
  FieldPtr K = NumberField::make(P({1, 0, 1}), i);
  FieldElem t = FieldElem::generator(K);
  CHECK((t * t + FieldElem(1)).is_zero());
  FieldElem a = t * FieldElem(2) + FieldElem(1);
  CHECK((a * a.inverse() - FieldElem(1)).is_zero());
  CHECK(a.conj() == FieldElem(1) - t * FieldElem(2));
  CHECK(a.re_sign() > 0);
  CHECK(a.im_sign() > 0);
  CHECK(a.conj().im_sign() < 0);
  CHECK(a.to_algebraic().minpoly() == P({5, -2, 1}));
  CHECK(norm(K, KPoly{a, FieldElem(1)}) == P({5, 2, 1}));
}

TEST_CASE("trager factoring") {
  AlgebraicNumber r2(P({-2, 0, 1}), CQ(Rational(1414, 1000)), make_rational(1, 100));
  FieldPtr K = NumberField::make(P({-2, 0, 1}), r2);
  auto f = factor_over(K, to_kpoly(P({-2, 0, 1}) * P({-3, 0, 1})));
  CHECK(f.size() == 3);
}

TEST_CASE("splitting field") {
  auto sf = splitting_field(P({0, 2, 2, 1}));  // x(x^2+2x+2), roots 0, -1 +- i
  CHECK(sf.roots.size() == 3);
  CHECK(sf.K->degree() == 2);
  int nonreal = 0;
  for (auto& r : sf.roots) {
    if (r.im_sign() != 0) ++nonreal;
    CHECK(r.conj().to_algebraic() == r.to_algebraic().conj());
  }
  CHECK(nonreal == 2);
  auto s3 = splitting_field(P({-2, 0, 0, 1}));  // x^3 - 2, degree 6
  CHECK(s3.K->degree() == 6);
  CHECK(s3.roots.size() == 3);
  for (auto& r : s3.roots) CHECK((r * r * r - FieldElem(2)).is_zero());
  int real = 0;
  for (auto& r : s3.roots) real += r.is_real();
  CHECK(real == 1);
}

#include "cll/algebra/jordan.hpp"

static RationalMatrix example_q() {
  auto q = [](const char* s) { return parse_rational(s); };
  return make_rational_matrix({{q("-0.025"), q("0.02"), q("0.005")}, {q("0.3"), q("-0.5"), q("0.2")}, {q("0.02"), q("0.4"), q("-0.42")}});
}

static bool reconstructs(const RationalMatrix& M) {
  auto jd = jordan_decompose(M);
  AlgMatrix R = jd.Pinv * assemble_jordan(jd.blocks) * jd.P;
  AlgMatrix A = to_alg_matrix(M);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!alg_is_zero(R(i, j) - A(i, j))) return false;
  AlgMatrix I = jd.P * jd.Pinv;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!alg_is_zero(I(i, j) - AlgebraicNumber(i == j ? 1 : 0))) return false;
  return true;
}

TEST_CASE("eigenvalues") {
  auto ev = eigenvalues(make_rational_matrix({{-1, 1}, {1, -1}}));
  REQUIRE(ev.size() == 2);
  auto rot = eigenvalues(make_rational_matrix({{0, -1}, {1, 0}}));
  REQUIRE(rot.size() == 2);
  CHECK(rot[0].first == alg_conj(rot[1].first));
  bool has_zero = false;
  for (auto& [v, m] : eigenvalues(example_q())) has_zero |= alg_is_zero(v);
  CHECK(has_zero);
}

TEST_CASE("jordan") {
  auto nil = jordan_decompose(make_rational_matrix({{0, 1}, {0, 0}}));
  REQUIRE(nil.blocks.size() == 1);
  CHECK(nil.blocks[0].size == 2);
  CHECK(alg_is_zero(nil.blocks[0].eigenvalue));
  auto diag = jordan_decompose(make_rational_matrix({{2, 0}, {0, 3}}));
  CHECK(diag.blocks.size() == 2);
  CHECK(reconstructs(make_rational_matrix({{2, 0}, {0, 3}})));
  CHECK(reconstructs(example_q()));
  CHECK(reconstructs(make_rational_matrix({{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}})));  // complex pair
  CHECK(reconstructs(make_rational_matrix({{2, 1, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 1}, {0, 0, 0, 2}})));
  CHECK(reconstructs(make_rational_matrix({{-2, 1, 1}, {0, -2, 2}, {0, 0, 0}})));
}
