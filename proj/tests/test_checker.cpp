#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cll/checker/checker.hpp"
#include "cll/checker/oracle.hpp"

using namespace cll::checker;
using cll::algebra::make_rational_matrix;
using cll::algebra::parse_rational;
using cll::algebra::Rational;
using cll::ctmc::CTMC;
using cll::ctmc::ProbInterval;
using cll::logic::parse;
using cll::logic::parse_state;
using cll::logic::to_cnf;

static Rational q(const char* s) { return parse_rational(s); }
static Rational R(long a, long b) { return cll::algebra::make_rational(a, b); }

static CTMC two_state() {
  CTMC c;
  c.states = {"a", "b"};
  c.Q = make_rational_matrix({{Rational(-1), Rational(1)}, {Rational(1), Rational(-1)}});
  return c;
}

static CTMC frozen(std::size_t n) {
  CTMC c;
  for (std::size_t i = 0; i < n; ++i) c.states.push_back("s" + std::to_string(i + 1));
  c.Q = make_rational_matrix(std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
  return c;
}

static double lo(const SymbolicTime& t) { return t.approx(); }

TEST_CASE("simplest rational between two rationals") {
  CHECK(simplest_between(q("1/3"), q("1/2")) == q("2/5"));
  CHECK(simplest_between(q("0.8"), Rational(3)) == 1);
  CHECK(simplest_between(q("-2.5"), q("-1.2")) == -2);
  CHECK(simplest_between(q("-1/2"), q("1/3")) == 0);
  CHECK(simplest_between(Rational(0), q("1/1000")) == q("1/1001"));
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Rational a(static_cast<long>(rng() % 200) - 100, static_cast<long>(rng() % 30 + 1));
    Rational b = a + Rational(static_cast<long>(rng() % 50 + 1), static_cast<long>(rng() % 60 + 1));
    a.canonicalize();
    b.canonicalize();
    Rational s = simplest_between(a, b);
    REQUIRE(a < s);
    REQUIRE(s < b);
    // no smaller denominator fits
    long den = s.get_den().get_si();
    for (long dd = 1; dd < den; ++dd) {
      Rational k = Rational(a * dd);
      cll::algebra::Integer f;
      mpz_fdiv_q(f.get_mpz_t(), k.get_num_mpz_t(), k.get_den_mpz_t());
      Rational next(cll::algebra::Integer(f + 1), cll::algebra::Integer(dd));
      next.canonicalize();
      CHECK(!(next < b));
    }
  }
}

TEST_CASE("interval algebra matches a rational reference") {
  TimeOrder ord;
  std::mt19937 rng(11);
  auto random_set = [&]() {
    std::vector<SymbolicInterval> v;
    int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) {
      long a = static_cast<long>(rng() % 10), b = a + static_cast<long>(rng() % 4);
      v.push_back({Rational(a), Rational(b), static_cast<bool>(rng() & 1), static_cast<bool>(rng() & 1)});
    }
    return v;
  };
  auto member = [](const std::vector<SymbolicInterval>& v, const Rational& x) {
    for (const auto& I : v) {
      Rational a = *I.low.exact(), b = *I.high.exact();
      if ((I.low_closed ? a <= x : a < x) && (I.high_closed ? x <= b : x < b)) return true;
    }
    return false;
  };
  for (int it = 0; it < 200; ++it) {
    auto A = random_set(), B = random_set();
    IntervalSet nA = ord.normalize(A), nB = ord.normalize(B);
    IntervalSet U = ord.unite(nA, nB), I = ord.intersect(nA, nB);
    for (std::size_t j = 1; j < U.intervals.size(); ++j) {
      // maximal: consecutive members are separated
      int c = ord.cmp(U.intervals[j].low, U.intervals[j - 1].high);
      CHECK((c > 0 || (c == 0 && !U.intervals[j].low_closed && !U.intervals[j - 1].high_closed)));
    }
    for (int x2 = -1; x2 <= 28; ++x2) {
      Rational x(x2, 2);
      bool a = member(A, x), b = member(B, x);
      CHECK(member(U.intervals, x) == (a || b));
      CHECK(member(I.intervals, x) == (a && b));
      CHECK(ord.contains(nA, SymbolicTime(x)) == a);
    }
  }
}

TEST_CASE("atom intervals on closed-form trajectories") {
  CTMC z = frozen(2);
  IntervalSet s = atom_intervals(z, {Rational(1), Rational(0)}, {1, ProbInterval{Rational(1), Rational(1)}}, Rational(5));
  REQUIRE(s.intervals.size() == 1);
  CHECK(*s.intervals[0].low.exact() == 0);
  CHECK(*s.intervals[0].high.exact() == 5);

  CTMC c = two_state();
  cll::ctmc::Distribution mu{Rational(1), Rational(0)};
  IntervalSet a = atom_intervals(c, mu, {1, ProbInterval{Rational(0), q("0.6")}}, Rational(3));
  REQUIRE(a.intervals.size() == 1);
  CHECK(a.intervals[0].low_closed);
  CHECK(a.intervals[0].high_closed);
  CHECK(lo(a.intervals[0].low) == doctest::Approx(std::log(5.0) / 2).epsilon(1e-12));
  CHECK(*a.intervals[0].high.exact() == 3);

  IntervalSet b = atom_intervals(c, mu, {1, ProbInterval{q("0.9"), Rational(1)}}, Rational(3));
  REQUIRE(b.intervals.size() == 1);
  CHECK(*b.intervals[0].low.exact() == 0);
  CHECK(lo(b.intervals[0].high) == doctest::Approx(std::log(1.25) / 2).epsilon(1e-12));

  // open end excludes the crossing itself
  IntervalSet o = atom_intervals(c, mu, {1, ProbInterval{q("0.6"), Rational(1), false, true}}, Rational(3));
  REQUIRE(o.intervals.size() == 1);
  CHECK(!o.intervals[0].high_closed);
}

TEST_CASE("state intervals through CNF") {
  CTMC c = two_state();
  cll::ctmc::Distribution mu{Rational(1), Rational(0)};
  Checker ch(c, mu);
  IntervalSet all = ch.state_intervals(parse_state("true"), Rational(3));
  REQUIRE(all.intervals.size() == 1);
  CHECK(*all.intervals[0].high.exact() == 3);
  IntervalSet tile = ch.state_intervals(parse_state("P[1] in [0.3,0.7] | !P[1] in [0.3,0.7]"), Rational(3));
  REQUIRE(tile.intervals.size() == 1);
  CHECK(*tile.intervals[0].low.exact() == 0);
  CHECK(*tile.intervals[0].high.exact() == 3);
  IntervalSet single = ch.state_intervals(parse_state("P[1] in [0,0.6]"), Rational(3));
  IntervalSet direct = ch.atom_intervals({1, ProbInterval{Rational(0), q("0.6")}}, Rational(3));
  REQUIRE(single.intervals.size() == direct.intervals.size());
  CHECK(single.intervals[0].low.approx() == direct.intervals[0].low.approx());
  // f1 in [0.9,1] and f2 in [0,0.6] overlap on [0, 0.1116]
  IntervalSet both = ch.state_intervals(parse_state("P[1] in [0.9,1] & P[2] in [0,0.6]"), Rational(3));
  REQUIRE(both.intervals.size() == 1);
  CHECK(lo(both.intervals[0].high) == doctest::Approx(std::log(1.25) / 2).epsilon(1e-12));
  CHECK(ch.state_intervals(parse_state("P[1] in [0.9,1] & P[1] in [0,0.6]"), Rational(3)).empty());
}

TEST_CASE("until chains on closed-form trajectories") {
  CTMC z = frozen(1);
  Checker fz(z, {Rational(1)});
  CHECK(fz.check(parse("P[1] in [1,1] U[0,1] P[1] in [1,1]")).satisfied);

  CTMC c = two_state();
  cll::ctmc::Distribution mu{Rational(1), Rational(0)};
  Checker ch(c, mu);
  Verdict f = ch.check(parse("F[0,3] P[1] in [0,0.6]"));
  CHECK(f.satisfied);
  REQUIRE(f.leaves.size() == 1);
  REQUIRE(f.leaves[0].witness);
  CHECK(f.leaves[0].witness->times[1].approx() == doctest::Approx(std::log(5.0) / 2).epsilon(1e-12));
  CHECK(ch.verify_witness(f.leaves[0].leaf, *f.leaves[0].witness).empty());

  CHECK(!ch.check(parse("G[0,1] P[1] in [0.9,1]")).satisfied);
  CHECK(!ch.check(parse("P[1] in [0.9,1] U[0,1] P[1] in [0,0.6]")).satisfied);
  CHECK(ch.check(parse("F[0,3] P[1] in [0,0.6] & !G[0,1] P[1] in [0.9,1]")).satisfied);
  CHECK(ch.check(parse("G[0,0.1] P[1] in [0.9,1]")).satisfied);
  CHECK(ch.check(parse("true")).satisfied);
  CHECK(!ch.check(parse("false")).satisfied);
  CHECK(!ch.check(parse("!true")).satisfied);

  // right-open windows: the switch happens strictly before 0.8
  CHECK(!ch.check(parse("F[0,0.8) P[1] in [0,0.6]")).satisfied);
  CHECK(ch.check(parse("F[0,0.81) P[1] in [0,0.6]")).satisfied);
  // Phi_0 only needs to hold inside the window
  CHECK(ch.check(parse("P[1] in [0.9,1] U[0.5,1] P[1] in [0,0.7]")).satisfied);
  CHECK(!ch.check(parse("P[1] in [0.9,1] U(0.2,1] P[1] in [0,0.7]")).satisfied);
  // two steps: reach f1 <= 0.6 then, 1 later, f2 >= 0.45
  Verdict two = ch.check(parse("true U[0,3] P[1] in [0,0.6] U[1,1] P[2] in [0.45,1]"));
  CHECK(two.satisfied);
  REQUIRE(two.leaves[0].witness);
  CHECK(ch.verify_witness(two.leaves[0].leaf, *two.leaves[0].witness).empty());
  CHECK(!ch.check(parse("true U[0,3] P[1] in [0,0.6] U[1,1] P[2] in [0.5,1]")).satisfied);
}

TEST_CASE("model check through the symbolized model") {
  cll::ctmc::SymbolizedCTMC m{two_state(), {ProbInterval{Rational(0), q("0.6")}, ProbInterval{q("0.9"), Rational(1)}}};
  cll::ctmc::Distribution mu{Rational(1), Rational(0)};
  Verdict v = model_check(m, mu, parse("F[0,3] P[1] in [0,0.6]"));
  CHECK(v.satisfied);
  CHECK(v.diagnostics.empty());
  Verdict w = model_check(m, mu, parse("F[0,3] P[1] in [0,0.5]"));
  CHECK(w.diagnostics.size() == 1);
  CHECK_THROWS_AS(model_check(m, mu, parse("F[0,3] P[3] in [0,0.5]")), cll::PreconditionViolation);
}

namespace {

std::string show(const CTMC& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += i ? "; " : "";
    for (std::size_t j = 0; j < c.size(); ++j) out += (j ? " " : "") + cll::ctmc::format_rational(c.Q(i, j));
  }
  return out;
}

struct Random {
  std::mt19937 rng;
  explicit Random(unsigned seed) : rng(seed) {}
  long pick(long a, long b) { return std::uniform_int_distribution<long>(a, b)(rng); }

  CTMC chain() {
    CTMC c;
    c.states = {"s1", "s2", "s3"};
    std::vector<std::vector<Rational>> Q(3, std::vector<Rational>(3, Rational(0)));
    for (int i = 0; i < 3; ++i) {
      Rational s = 0;
      for (int j = 0; j < 3; ++j)
        if (i != j) {
          Q[i][j] = R(pick(0, 8), 4);
          s += Q[i][j];
        }
      Q[i][i] = -s;
    }
    c.Q = make_rational_matrix(Q);
    return c;
  }
  cll::ctmc::Distribution initial() {
    long a = pick(1, 5), b = pick(1, 5), d = pick(1, 5);
    return {R(a, a + b + d), R(b, a + b + d), R(d, a + b + d)};
  }
  std::string atom() {
    long a = pick(0, 9), b = pick(a + 1, 10);
    std::string l = pick(0, 1) ? "[" : "(", r = pick(0, 1) ? "]" : ")";
    return "P[" + std::to_string(pick(1, 3)) + "] in " + l + cll::ctmc::format_rational(R(a, 10)) + "," +
           cll::ctmc::format_rational(R(b, 10)) + r;
  }
  std::string state() {
    switch (pick(0, 4)) {
      case 0: return "true";
      case 1: return "!" + atom();
      case 2: return "(" + atom() + " & " + atom() + ")";
      default: return atom();
    }
  }
  std::string window() {
    long a = pick(0, 8), b = pick(a + 1, 10);
    std::string l = pick(0, 3) ? "[" : "(", r = pick(0, 3) ? "]" : ")";
    return l + cll::ctmc::format_rational(R(a, 2)) + "," + cll::ctmc::format_rational(R(b, 2)) + r;
  }
  std::string chain_formula() {
    std::string s = state() + " U" + window() + " " + state();
    if (pick(0, 1)) s += " U" + window() + " " + state();
    return s;
  }
};

}  // namespace

TEST_CASE("agreement with the grid oracle and witness validity") {
  Random r(2024);
  int compared = 0;
  for (int it = 0; it < 6; ++it) {
    CTMC c = r.chain();
    auto mu = r.initial();
    Checker ch(c, mu);
    for (int f = 0; f < 3; ++f) {
      std::string text = r.chain_formula();
      auto phi = parse(text);
      Verdict v = ch.check(phi);
      OracleResult o = grid_check(c, mu, phi);
      INFO(text << "  Q=" << show(c) << "  margin " << o.margin << " (" << o.nearest << ")");
      if (o.margin > 1e-3) {
        CHECK(v.satisfied == o.satisfied);
        ++compared;
      }
      for (const auto& leaf : v.leaves)
        if (leaf.witness) CHECK(ch.verify_witness(leaf.leaf, *leaf.witness).empty());
    }
  }
  CHECK(compared >= 10);
}

TEST_CASE("widening an atom never breaks an eventually formula") {
  Random r(99);
  for (int it = 0; it < 6; ++it) {
    CTMC c = r.chain();
    auto mu = r.initial();
    Checker ch(c, mu);
    long a = r.pick(2, 5), b = r.pick(a + 1, 8);
    std::string narrow = "F[0,4] P[1] in [" + cll::ctmc::format_rational(R(a, 10)) + "," + cll::ctmc::format_rational(R(b, 10)) + "]";
    std::string wide = "F[0,4] P[1] in [" + cll::ctmc::format_rational(R(a - 2, 10)) + "," + cll::ctmc::format_rational(R(b + 2, 10)) + "]";
    if (ch.check(parse(narrow)).satisfied) CHECK(ch.check(parse(wide)).satisfied);
  }
}
