#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cll/logic/formula.hpp"

using namespace cll::logic;
using cll::algebra::parse_rational;
using cll::algebra::Rational;

static Rational q(const char* s) { return parse_rational(s); }

static Atom atom(int j, const char* lo, const char* hi, bool lc = true, bool hc = true) {
  return Atom{j, ProbInterval{q(lo), q(hi), lc, hc}};
}

TEST_CASE("atom as a state query") {
  PathPtr p = parse("P[3] in [0.4,0.4]");
  REQUIRE(p->kind == Path::Kind::State);
  REQUIRE(p->state->kind == State::Kind::Atom);
  CHECK(p->state->atom == atom(3, "2/5", "2/5"));
}

TEST_CASE("until chains are flat and right associative") {
  PathPtr p = parse("P[1] in [0,0.5] U[3,9] P[2] in (0.1,1] U(2,7) P[3] in [0.2,0.3)");
  REQUIRE(p->kind == Path::Kind::Until);
  CHECK(equal(p->state, State::make_atom(atom(1, "0", "1/2"))));
  REQUIRE(p->steps.size() == 2);
  CHECK(p->steps[0].first == TimeWindow{Rational(3), Rational(9), true, true});
  CHECK(p->steps[1].first == TimeWindow{Rational(2), Rational(7), false, false});
  CHECK(equal(p->steps[0].second, State::make_atom(atom(2, "0.1", "1", false, true))));
  CHECK(equal(p->steps[1].second, State::make_atom(atom(3, "0.2", "0.3", true, false))));
}

TEST_CASE("eventually and always desugar") {
  PathPtr p = parse("F[0,1000] P[2] in [1,1]");
  REQUIRE(p->kind == Path::Kind::Until);
  CHECK(p->state->kind == State::Kind::True);
  REQUIRE(p->steps.size() == 1);
  CHECK(p->steps[0].first == TimeWindow{Rational(0), Rational(1000), true, true});
  CHECK(equal(p->steps[0].second, State::make_atom(atom(2, "1", "1"))));

  PathPtr g = parse("G[0,1] P[1] in [0.9,1]");
  REQUIRE(g->kind == Path::Kind::Not);
  REQUIRE(g->a->kind == Path::Kind::Until);
  CHECK(g->a->steps[0].second->kind == State::Kind::Not);
}

TEST_CASE("state and path connectives") {
  PathPtr p = parse("F[0,1] P[1] in [0,0.5] & P[2] in [0,1] | !G[1,2] P[1] in [0.5,1]");
  // F binds the whole state formula to its right
  REQUIRE(p->kind == Path::Kind::Not);  // desugared or
  PathPtr q1 = parse("(F[0,1] P[1] in [0,0.5]) & G[1,2] P[1] in [0.5,1]");
  REQUIRE(q1->kind == Path::Kind::And);
  CHECK(q1->a->kind == Path::Kind::Until);
  CHECK(q1->b->kind == Path::Kind::Not);
  PathPtr q2 = parse("P[1] in [0,0.5] & F[0,1] P[2] in [0,0.5]");
  REQUIRE(q2->kind == Path::Kind::And);
  CHECK(q2->a->kind == Path::Kind::State);
  PathPtr q3 = parse("!P[1] in [0,0.5] U[0,1] P[2] in [0,0.5]");
  REQUIRE(q3->kind == Path::Kind::Until);
  CHECK(q3->state->kind == State::Kind::Not);
  CHECK(parse("true")->kind == Path::Kind::True);
  StatePtr s = parse_state("P[1] in [0,1] -> P[2] in [0,0.5] -> false");
  CHECK(equal(s, State::make_implies(State::make_atom(atom(1, "0", "1")),
                                     State::make_implies(State::make_atom(atom(2, "0", "1/2")), State::make_false()))));
}

TEST_CASE("syntax errors carry positions") {
  auto pos = [](const std::string& text) -> long {
    try {
      parse(text);
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.position);
    }
    return -1;
  };
  CHECK(pos("P[1] in [0,1") == 12);
  CHECK(pos("P[1] in [0,1] U[0,2") == 19);
  CHECK(pos("P[1] on [0,1]") == 5);
  CHECK(pos("P[1] in [0,1] $") == 14);
  CHECK(pos("F[2,1] P[1] in [0,1]") == 1);
  CHECK(pos("F[-1,1] P[1] in [0,1]") == 1);
  CHECK(pos("P[1] in [0,2]") == 8);
  CHECK(pos("P[0] in [0,1]") == 2);
  CHECK_THROWS_WITH_AS(parse("F[0,inf] P[1] in [0,1]"), doctest::Contains("unbounded"), SyntaxError);
  CHECK_THROWS_WITH_AS(parse("F[0,oo) P[1] in [0,1]"), doctest::Contains("unbounded"), SyntaxError);
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("P[1] in [0,1] U[1,1) P[2] in [0,1]"), SyntaxError);
}

TEST_CASE("print then parse is the identity") {
  const char* corpus[] = {
      "P[3] in [0.4,0.4]",
      "P[1] in [0,0.5] U[3,9] P[2] in (0.1,1] U(2,7) P[3] in [0.2,0.3)",
      "F[0,1000] P[2] in [1,1]",
      "G[0,1] P[1] in [0.9,1]",
      "!(P[1] in [0,1/3] & P[2] in (1/3,1]) U[0,5] (P[3] in [0,1] | false)",
      "(F[0,1] P[1] in [0,0.5]) & !G[1,2] P[1] in [0.5,1] | P[2] in [0,0.1]",
      "true U[0,1] true",
      "P[1] in [0,0.5] -> P[2] in [0.5,1]",
      "(F[0,1] P[1] in [0,1]) -> G[0,2] P[2] in [0,1]",
  };
  for (const char* s : corpus) {
    PathPtr p = parse(s);
    std::string printed = to_string(p);
    INFO(s << "  printed as  " << printed);
    PathPtr back = parse(printed);
    CHECK(equal(p, back));
    CHECK(to_string(back) == printed);
  }
}

TEST_CASE("check_bound reports out-of-range states") {
  PathPtr p = parse("P[1] in [0,1] U[0,1] P[4] in [0,1]");
  CHECK(check_bound(p, 4).empty());
  auto msgs = check_bound(p, 3);
  REQUIRE(msgs.size() == 1);
  CHECK(msgs[0].find("state 4") != std::string::npos);
}

TEST_CASE("complementary atoms") {
  auto c = complement(atom(2, "0.1", "0.9"));
  REQUIRE(c.size() == 2);
  CHECK(c[0] == atom(2, "0", "0.1", true, false));
  CHECK(c[1] == atom(2, "0.9", "1", false, true));
  CHECK(complement(atom(1, "0", "1")).empty());
  auto d = complement(atom(1, "0", "0.3", false, true));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == atom(1, "0", "0"));
  auto e = complement(atom(1, "0.5", "1", true, false));
  REQUIRE(e.size() == 2);
  CHECK(e[1] == atom(1, "1", "1"));

  CNF f = to_cnf(State::make_not(State::make_atom(atom(1, "0", "1"))));
  CHECK(f.is_false());
  CNF g = to_cnf(State::make_and(State::make_atom(atom(1, "0", "0.5")), State::make_atom(atom(2, "0.5", "1"))));
  CHECK(g.clauses.size() == 2);
  CHECK(g.clauses[0].size() == 1);
  CHECK(to_cnf(State::make_true()).is_true());
  CHECK(to_cnf(State::make_false()).is_false());
}

namespace {

// every p in [0,1] lies in exactly one of I and its complements
void check_partition(const Atom& a, const Rational& p) {
  int hits = a.interval.contains(p) ? 1 : 0;
  for (const auto& c : complement(a)) hits += c.interval.contains(p) ? 1 : 0;
  CHECK(hits == 1);
}

struct Gen {
  std::mt19937 rng{12345};
  Rational prob() {
    // tenths make endpoint collisions common
    return cll::algebra::make_rational(std::uniform_int_distribution<long>(0, 10)(rng), 10);
  }
  Atom atom(int d) {
    Rational a = prob(), b = prob();
    if (a > b) std::swap(a, b);
    bool lc = rng() & 1, hc = rng() & 1;
    if (a == b) lc = hc = true;
    return Atom{std::uniform_int_distribution<int>(1, d)(rng), ProbInterval{a, b, lc, hc}};
  }
  StatePtr state(int d, int depth) {
    int k = depth == 0 ? std::uniform_int_distribution<int>(0, 3)(rng) : std::uniform_int_distribution<int>(0, 6)(rng);
    if (k == 0) return State::make_true();
    if (k <= 3 || depth == 0) return State::make_atom(atom(d));
    if (k == 4) return State::make_not(state(d, depth - 1));
    if (k == 5) return State::make_and(state(d, depth - 1), state(d, depth - 1));
    return State::make_or(state(d, depth - 1), state(d, depth - 1));
  }
};

bool eval_cnf(const CNF& f, const cll::ctmc::Distribution& mu) {
  for (const auto& cl : f.clauses) {
    bool any = false;
    for (const auto& a : cl) any = any || a.interval.contains(mu[static_cast<std::size_t>(a.state - 1)]);
    if (!any) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("complements partition [0,1]") {
  Gen g;
  for (int i = 0; i < 300; ++i) {
    Atom a = g.atom(1);
    for (int k = 0; k <= 20; ++k) check_partition(a, Rational(k, 20));
  }
}

TEST_CASE("CNF agrees with direct evaluation") {
  Gen g;
  for (int i = 0; i < 400; ++i) {
    StatePtr s = g.state(3, 4);
    CNF f = to_cnf(s);
    for (const auto& c : f.clauses)
      for (const auto& a : c) CHECK(a.interval.low <= a.interval.high);
    for (int k = 0; k < 10; ++k) {
      cll::ctmc::Distribution mu{g.prob(), g.prob(), g.prob()};
      INFO(to_string(s) << "  cnf  " << f.to_string());
      CHECK(eval_cnf(f, mu) == holds(s, mu));
    }
  }
}

TEST_CASE("path normal form") {
  PathPtr chi1 = parse("F[0,1] P[1] in [0,0.5]");
  PathPtr chi2 = parse("P[1] in [0,1] U[0,2] P[2] in [0.5,1]");
  PathNF a = normalize_path(Path::make_not(Path::make_not(chi1)));
  CHECK(a.kind == PathNF::Kind::Leaf);
  CHECK(a.leaf == chi1);
  PathNF b = normalize_path(Path::make_and(chi1, Path::make_true()));
  CHECK(b.kind == PathNF::Kind::Leaf);
  PathNF c = normalize_path(Path::make_not(Path::make_and(chi1, chi2)));
  REQUIRE(c.kind == PathNF::Kind::Or);
  REQUIRE(c.children.size() == 2);
  CHECK(c.children[0].kind == PathNF::Kind::NotLeaf);
  CHECK(c.children[1].kind == PathNF::Kind::NotLeaf);
  CHECK(normalize_path(Path::make_and(chi1, Path::make_not(Path::make_true()))).kind == PathNF::Kind::False);
  PathNF d = normalize_path(parse("G[0,1] P[1] in [0.9,1]"));
  CHECK(d.kind == PathNF::Kind::NotLeaf);
  PathNF e = normalize_path(Path::make_and(Path::make_and(chi1, chi2), chi1));
  REQUIRE(e.kind == PathNF::Kind::And);
  CHECK(e.children.size() == 3);
}
