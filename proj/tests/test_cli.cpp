#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cll/checker/checker.hpp"
#include "cll/cli/commands.hpp"
#include "cll/cli/io.hpp"
#include "cll/cli/records.hpp"
#include "cll/pef/isolate.hpp"

using namespace cll::cli;
using cll::algebra::make_rational;
using cll::algebra::parse_rational;
using json = nlohmann::json;

static const std::string kModels = CLL_MODELS_DIR;

static std::string model(const char* name) { return kModels + "/" + name; }

static RunConfig config(const char* m, const std::string& f = "") {
  RunConfig c;
  c.model_path = model(m);
  c.formula = f;
  return c;
}

struct Run {
  int rc;
  std::string out, err;
};

template <class F>
static Run capture(F f) {
  std::ostringstream out, err;
  int rc = f(out, err);
  return {rc, out.str(), err.str()};
}

static std::vector<json> records(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

TEST_CASE("model files") {
  Model m = load_model(model("example.json"));
  CHECK(m.model.chain.size() == 3);
  CHECK(m.model.chain.Q(0, 1) == make_rational(1, 50));
  CHECK(m.initial[2] == make_rational(2, 5));
  REQUIRE(m.model.intervals.size() == 4);
  CHECK_FALSE(m.model.intervals[0].high_closed);
  CHECK(m.model.intervals[2].to_string() == "(0.5,0.7]");

  try {
    load_model(model("bad_row.json"));
    FAIL("accepted a bad model");
  } catch (const ModelError& e) {
    REQUIRE(!e.diagnostics.empty());
    CHECK(e.diagnostics[0].where == "Q row 1");
  }
  auto diag = [](const std::string& text) {
    try {
      parse_model(text);
    } catch (const ModelError& e) {
      std::string all;
      for (const auto& d : e.diagnostics) all += d.to_string() + "\n";
      return all;
    }
    return std::string("accepted");
  };
  CHECK(diag("{") .find("not valid JSON") != std::string::npos);
  CHECK(diag(R"({"Q": [["-1","1"],["1","-1"]]})") == "model: missing field \"initial\"\n");
  CHECK(diag(R"({"Q": [["-1","1"],["1"]], "initial": ["1","0"]})") == "Q row 2: expected 2 entries\n");
  CHECK(diag(R"({"Q": [["-1",1.5],["1","-1"]], "initial": ["1","0"]})").rfind("Q[1][2]", 0) == 0);
  CHECK(diag(R"({"Q": [["-1","1"],["1","-1"]], "initial": ["1/2","1/3"], "intervals": [{"low": "0", "high": "1"}]})") ==
        "initial: entries sum to 5/6\n");
  CHECK(diag(R"({"Q": [["-1","1"],["1","-1"]], "initial": ["1","0"], "intervals": [{"low": "x", "high": "1"}]})")
            .rfind("interval 1.low", 0) == 0);
  // integers as JSON numbers are exact; intervals default to closed
  Model n = parse_model(R"({"Q": [[-1, 1], [1, -1]], "initial": [1, 0], "intervals": [{"low": "0", "high": "1/2"}]})");
  CHECK(n.model.intervals[0].low_closed);
  CHECK(n.model.intervals[0].high_closed);
  CHECK(n.model.chain.states == std::vector<std::string>{"s1", "s2"});
}

static double value(const cll::pef::Pef& f, double t) {
  return cll::pef::RealPef(f).eval(parse_rational(std::to_string(t)), 40).mid().re.get_d();
}

TEST_CASE("function text") {
  auto f = parse_pef("e^{it} + e^{-it}");
  CHECK(f.terms().size() == 2);
  for (double t : {0.0, 0.7, 2.5}) CHECK(value(f, t) == doctest::Approx(2 * std::cos(t)).epsilon(1e-9));
  auto g = parse_pef("3t^2 e^{-t/2} - 1");
  for (double t : {0.0, 1.0, 4.0}) CHECK(value(g, t) == doctest::Approx(3 * t * t * std::exp(-t / 2) - 1).epsilon(1e-9));
  auto h = parse_pef("exp((1+2i)t) + exp((1-2i)*t)");
  for (double t : {0.3, 1.1}) CHECK(value(h, t) == doctest::Approx(2 * std::exp(t) * std::cos(2 * t)).epsilon(1e-9));
  auto k = parse_pef("i e^{it} - i e^{-it}");  // -2 sin t
  CHECK(value(k, 1.0) == doctest::Approx(-2 * std::sin(1.0)).epsilon(1e-9));
  CHECK(parse_pef("2/3 t").to_string() == parse_pef("(2/3)*t").to_string());
  CHECK(parse_pef("e^t - e^t").is_zero());
  CHECK(value(parse_pef("0.5 - 0.25"), 3.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(parse_pef("e^{t^2}"), cll::logic::SyntaxError);
  CHECK_THROWS_AS(parse_pef("e^{t+1}"), cll::logic::SyntaxError);
  CHECK_THROWS_AS(parse_pef("2 +"), cll::logic::SyntaxError);
  CHECK_THROWS_AS(parse_pef("sin(t)"), cll::logic::SyntaxError);
  CHECK_THROWS_AS(parse_pef("(1"), cll::logic::SyntaxError);
}

TEST_CASE("check subcommand") {
  auto r = capture([](auto& o, auto& e) { return cmd_check(config("example.json", "F[0,100] P[1] in [0,1]"), o, e); });
  CHECK(r.rc == kOk);
  CHECK(r.out.rfind("SAT\n", 0) == 0);

  r = capture([](auto& o, auto& e) { return cmd_check(config("two_state.json", "G[0,1] P[1] in [0.9,1]"), o, e); });
  CHECK(r.rc == kOk);
  CHECK(r.out.rfind("UNSAT\n", 0) == 0);

  RunConfig c = config("two_state.json", "F[0,3] P[1] in [0,0.6]");
  c.format = Format::Structured;
  c.epsilon = make_rational(1, 1000000);
  r = capture([&](auto& o, auto& e) { return cmd_check(c, o, e); });
  REQUIRE(r.rc == kOk);
  VerdictRecord v = parse_structured(r.out);
  CHECK(v.satisfied);
  REQUIRE(v.witnesses.size() == 1);
  const TimeRecord& s1 = v.witnesses[0].times.at(1);
  REQUIRE_FALSE(s1.rational);
  CHECK(s1.high - s1.low <= make_rational(1, 1000000));
  const double ln5_2 = std::log(5.0) / 2;
  CHECK(s1.low.get_d() < ln5_2);
  CHECK(ln5_2 < s1.high.get_d());
  CHECK(v.pefs.count(s1.pef) == 1);

  r = capture([](auto& o, auto& e) { return cmd_check(config("bad_row.json", "F[0,1] P[1] in [0,1]"), o, e); });
  CHECK(r.rc == kInvalid);
  CHECK(r.err.find("Q row 1") != std::string::npos);

  r = capture([](auto& o, auto& e) { return cmd_check(config("two_state.json", "F[0,1 P[1] in [0,1]"), o, e); });
  CHECK(r.rc == kInvalid);
  CHECK(r.err.find("syntax error at") != std::string::npos);

  r = capture([](auto& o, auto& e) { return cmd_check(config("two_state.json", "F[0,1] P[3] in [0,1]"), o, e); });
  CHECK(r.rc == kInvalid);

  r = capture([](auto& o, auto& e) { return cmd_check(config("missing.json", "F[0,1] P[1] in [0,1]"), o, e); });
  CHECK(r.rc == kInvalid);

  RunConfig bad = config("two_state.json", "F[0,1] P[1] in [0,1]");
  bad.epsilon = 0;
  CHECK(capture([&](auto& o, auto& e) { return cmd_check(bad, o, e); }).rc == kInvalid);

  RunConfig s = config("bad_row.json", "F[0,1] P[1] in [0,1]");
  s.format = Format::Structured;
  r = capture([&](auto& o, auto& e) { return cmd_check(s, o, e); });
  CHECK(r.rc == kInvalid);
  auto recs = records(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["error"] == "model error");
  CHECK(recs[0]["diagnostics"][0]["where"] == "Q row 1");
}

TEST_CASE("structured verdicts round-trip") {
  const std::vector<std::pair<const char*, const char*>> corpus = {
      {"two_state.json", "F[0,3] P[1] in [0,0.6]"},
      {"two_state.json", "G[0,1] P[1] in [0.9,1]"},
      {"two_state.json", "P[1] in [0.9,1] U[0,1] P[1] in [0,0.6]"},
      {"two_state.json", "P[1] in [0.9,1] U[0,1] P[2] in [0,0.6] U(0,2] P[1] in [0,0.55]"},
      {"two_state.json", "F[1/2,2] P[2] in [0.45,0.5) & !G[0,1] P[1] in (0.6,1]"},
      {"example.json", "F[0,20] P[1] in (0.5,0.7]"},
      {"example.json", "P[3] in (0.3,1] U[0,2) P[2] in [0,0.2) | G[0,1] P[1] in [0,0.2)"},
      {"frozen.json", "G[0,5] P[1] in [0,1/2)"},
  };
  for (const auto& [m, f] : corpus) {
    CAPTURE(f);
    Model mod = load_model(model(m));
    auto verdict = cll::checker::model_check(mod.model, mod.initial, cll::logic::parse(f));
    VerdictRecord rec = summarize(verdict, make_rational(1, 1000000000));
    std::string text = print_structured(rec);
    VerdictRecord back = parse_structured(text);
    CHECK(back == rec);
    CHECK(print_structured(back) == text);
    for (const auto& line : records(text)) CHECK(line.is_object());
  }
  CHECK_THROWS_AS(parse_structured("{\"pefs\": {}}\n"), cll::Error);
  CHECK_THROWS_AS(parse_structured("not json\n"), cll::Error);
}

TEST_CASE("isolate subcommand") {
  RunConfig c = config("two_state.json");
  c.format = Format::Structured;
  c.epsilon = make_rational(1, 1000000);
  IsolateTarget t;
  t.state = 1;
  t.level = make_rational(3, 5);
  t.high = 3;
  auto r = capture([&](auto& o, auto& e) { return cmd_isolate(c, t, o, e); });
  REQUIRE(r.rc == kOk);
  auto recs = records(r.out);
  auto ivs = recs.at(1)["intervals"];
  REQUIRE(ivs.size() == 1);
  auto lo = parse_rational(ivs[0]["low"].get<std::string>()), hi = parse_rational(ivs[0]["high"].get<std::string>());
  CHECK(hi - lo <= make_rational(1, 1000000));
  CHECK(lo.get_d() < std::log(5.0) / 2);
  CHECK(std::log(5.0) / 2 < hi.get_d());

  IsolateTarget cosine;
  cosine.pef = "e^{it}+e^{-it}";
  cosine.high = 10;
  r = capture([&](auto& o, auto& e) { return cmd_isolate(c, cosine, o, e); });
  REQUIRE(r.rc == kOk);
  ivs = records(r.out).at(1)["intervals"];
  REQUIRE(ivs.size() == 3);
  for (int k = 0; k < 3; ++k) {
    double root = (2 * k + 1) * M_PI / 2;
    CHECK(parse_rational(ivs[k]["low"].get<std::string>()).get_d() < root);
    CHECK(root < parse_rational(ivs[k]["high"].get<std::string>()).get_d());
  }

  IsolateTarget one;
  one.pef = "1";
  one.high = 1;
  r = capture([&](auto& o, auto& e) { return cmd_isolate(c, one, o, e); });
  CHECK(r.rc == kOk);
  CHECK(records(r.out).at(1)["intervals"].empty());

  IsolateTarget zero;
  zero.pef = "t - t";
  zero.high = 1;
  CHECK(capture([&](auto& o, auto& e) { return cmd_isolate(c, zero, o, e); }).rc == kInvalid);
  IsolateTarget complex;
  complex.pef = "e^{it}";
  complex.high = 1;
  CHECK(capture([&](auto& o, auto& e) { return cmd_isolate(c, complex, o, e); }).rc == kInvalid);
  IsolateTarget nowin;
  nowin.pef = "t - 1";
  CHECK(capture([&](auto& o, auto& e) { return cmd_isolate(c, nowin, o, e); }).rc == kInvalid);

  // horizon taken from the formula
  RunConfig h = c;
  h.formula = "F[0,2] P[1] in [0,1/2]";
  IsolateTarget lin;
  lin.pef = "t - 3/2";
  r = capture([&](auto& o, auto& e) { return cmd_isolate(h, lin, o, e); });
  REQUIRE(r.rc == kOk);
  CHECK(records(r.out).at(1)["intervals"][0]["exact"] == "1.5");
}

TEST_CASE("trace subcommand") {
  RunConfig c = config("two_state.json");
  c.format = Format::Structured;
  c.horizon = 3;
  auto r = capture([&](auto& o, auto& e) { return cmd_trace(c, Rational(1), o, e); });
  REQUIRE(r.rc == kOk);
  std::vector<json> segs, samples;
  for (auto& x : records(r.out)) {
    if (x.contains("segment")) segs.push_back(x["segment"]);
    if (x.contains("sample")) samples.push_back(x["sample"]);
  }
  REQUIRE(segs.size() == 3);
  CHECK(samples.size() == 4);
  CHECK(samples[1]["mu"][0].get<double>() == doctest::Approx((1 + std::exp(-2.0)) / 2).epsilon(1e-9));
  CHECK(segs[0]["high"].get<std::string>().rfind("root of", 0) == 0);
  CHECK(segs[0]["atoms"].size() == 2);
  CHECK(segs[1]["atoms"] == json::array({"<2,[0,0.6]>"}));
  CHECK(segs[2]["high"] == "3");

  RunConfig z = config("frozen.json");
  z.format = Format::Structured;
  z.horizon = 4;
  r = capture([&](auto& o, auto& e) { return cmd_trace(z, Rational(0), o, e); });
  REQUIRE(r.rc == kOk);
  auto recs = records(r.out);
  CHECK(recs[0]["segment"]["low"] == "0");
  CHECK(recs[0]["segment"]["high"] == "4");
  CHECK(recs[1].contains("pefs"));

  RunConfig none = config("two_state.json");
  CHECK(capture([&](auto& o, auto& e) { return cmd_trace(none, std::nullopt, o, e); }).rc == kInvalid);
}

TEST_CASE("simulate subcommand") {
  RunConfig c = config("two_state.json", "F[0,3] P[1] in [0,0.6]");
  c.format = Format::Structured;
  auto r = capture([&](auto& o, auto& e) { return cmd_simulate(c, make_rational(1, 10000), 1e-3, o, e); });
  REQUIRE(r.rc == kOk);
  auto rec = records(r.out).at(0);
  CHECK(rec["verdict"] == "SAT");
  CHECK(rec["oracle"] == "SAT");
  CHECK(rec["agreement"] == true);
  CHECK(rec["inconclusive"] == false);

  // first crossing at ln(5/4)/2 ~ 0.1116; a window ending there is inside the margin
  RunConfig edge = config("two_state.json", "G[0,0.1116] P[1] in [0.9,1]");
  edge.format = Format::Structured;
  r = capture([&](auto& o, auto& e) { return cmd_simulate(edge, make_rational(1, 10000), 1e-3, o, e); });
  REQUIRE(r.rc == kOk);
  CHECK(records(r.out).at(0)["inconclusive"] == true);

  RunConfig z = config("frozen.json", "G[0,5] P[1] in [0,1/2)");
  r = capture([&](auto& o, auto& e) { return cmd_simulate(z, make_rational(1, 1000), 1e-3, o, e); });
  CHECK(r.rc == kOk);
  CHECK(r.out.find("agreement") != std::string::npos);
}
