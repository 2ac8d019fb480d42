#include <cctype>
#include <optional>
#include <tuple>

#include "cll/logic/formula.hpp"

namespace cll::logic {

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Token::Kind::Ident, s.substr(start, i - start), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      ++i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == '/')) ++i;
      out.push_back({Token::Kind::Number, s.substr(start, i - start), start});
    } else if (s.compare(i, 2, "->") == 0 || s.compare(i, 2, "&&") == 0 || s.compare(i, 2, "||") == 0) {
      out.push_back({Token::Kind::Punct, std::string(1, s[i] == '-' ? '>' : c), start});
      i += 2;
    } else if (std::string("[](),!&|").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), start});
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

Rational to_rational(const Token& t) {
  try {
    return algebra::parse_rational(t.text);
  } catch (const Error&) {
    throw SyntaxError("malformed number '" + t.text + "'", t.pos);
  }
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  PathPtr whole_path() {
    PathPtr p = path();
    expect_end();
    return p;
  }

  StatePtr whole_state() {
    StatePtr s = state();
    expect_end();
    return s;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  // furthest failure, reported when every alternative fails
  std::size_t err_pos_ = 0;
  std::string err_msg_;

  const Token& peek() const { return toks_[at_]; }
  bool is(const char* p) const { return peek().kind != Token::Kind::End && peek().kind != Token::Kind::Number && peek().text == p; }

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, peek().pos); }

  void expect(const char* p) {
    if (!is(p)) fail(std::string("expected '") + p + "'" + (peek().kind == Token::Kind::End ? " before end of input" : ", found '" + peek().text + "'"));
    ++at_;
  }

  void expect_end() {
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
  }

  template <class F>
  auto attempt(F f) -> std::optional<decltype(f())> {
    const std::size_t save = at_;
    try {
      return f();
    } catch (const SyntaxError& e) {
      if (e.position >= err_pos_) {
        err_pos_ = e.position;
        err_msg_ = e.what();
      }
      // an unbounded window is never recoverable by another alternative
      if (std::string(e.what()).find("unbounded") != std::string::npos) throw;
      at_ = save;
      return std::nullopt;
    }
  }

  [[noreturn]] void rethrow_furthest() {
    const std::string prefix = "syntax error at " + std::to_string(err_pos_) + ": ";
    throw SyntaxError(err_msg_.substr(prefix.size()), err_pos_);
  }

  Rational number() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident && (t.text == "inf" || t.text == "oo" || t.text == "infinity"))
      throw SyntaxError("unbounded window or interval is not supported", t.pos);
    if (t.kind != Token::Kind::Number) fail("expected a number");
    ++at_;
    return to_rational(t);
  }

  // ("["|"(") rat "," rat ("]"|")")
  std::tuple<Rational, Rational, bool, bool> interval() {
    bool lc;
    if (is("["))
      lc = true;
    else if (is("("))
      lc = false;
    else
      fail("expected '[' or '(' opening an interval");
    ++at_;
    Rational lo = number();
    expect(",");
    Rational hi = number();
    bool hc;
    if (is("]"))
      hc = true;
    else if (is(")"))
      hc = false;
    else
      fail("expected ']' or ')' closing an interval");
    ++at_;
    return {lo, hi, lc, hc};
  }

  TimeWindow window() {
    const std::size_t pos = peek().pos;
    auto [lo, hi, lc, hc] = interval();
    TimeWindow w{lo, hi, lc, hc};
    if (sgn(lo) < 0) throw SyntaxError("time window " + w.to_string() + " starts before 0", pos);
    if (w.empty()) throw SyntaxError("time window " + w.to_string() + " is empty", pos);
    return w;
  }

  StatePtr atom() {
    const std::size_t pos = peek().pos;
    expect("P");
    expect("[");
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.find_first_not_of("0123456789") != std::string::npos) fail("expected a state index");
    ++at_;
    const long j = std::stol(t.text);
    if (j < 1) throw SyntaxError("state indices start at 1", t.pos);
    expect("]");
    expect("in");
    const std::size_t ipos = peek().pos;
    auto [lo, hi, lc, hc] = interval();
    ProbInterval I{lo, hi, lc, hc};
    if (sgn(lo) < 0 || hi > 1) throw SyntaxError("probability interval " + I.to_string() + " leaves [0,1]", ipos);
    if (I.empty()) throw SyntaxError("probability interval " + I.to_string() + " is empty", ipos);
    (void)pos;
    return State::make_atom(Atom{static_cast<int>(j), I});
  }

  // state := sor ("->" state)?
  StatePtr state() {
    StatePtr x = state_or();
    if (is(">")) {
      const std::size_t save = at_;
      ++at_;
      if (auto y = attempt([&] { return state(); })) return State::make_implies(x, *y);
      at_ = save;
    }
    return x;
  }

  StatePtr state_or() {
    StatePtr x = state_and();
    while (is("|")) {
      const std::size_t save = at_;
      ++at_;
      auto y = attempt([&] { return state_and(); });
      if (!y) {
        at_ = save;
        break;
      }
      x = State::make_or(x, *y);
    }
    return x;
  }

  StatePtr state_and() {
    StatePtr x = state_unary();
    while (is("&")) {
      const std::size_t save = at_;
      ++at_;
      auto y = attempt([&] { return state_unary(); });
      if (!y) {
        at_ = save;
        break;
      }
      x = State::make_and(x, *y);
    }
    return x;
  }

  StatePtr state_unary() {
    if (is("!")) {
      ++at_;
      return State::make_not(state_unary());
    }
    if (is("true")) {
      ++at_;
      return State::make_true();
    }
    if (is("false")) {
      ++at_;
      return State::make_false();
    }
    if (is("(")) {
      ++at_;
      StatePtr s = state();
      expect(")");
      return s;
    }
    if (is("P")) return atom();
    fail(peek().kind == Token::Kind::End ? "unexpected end of input" : "unexpected '" + peek().text + "'");
  }

  // path := pand ("|" pand)* ("->" path)?
  PathPtr path() {
    PathPtr x = path_and();
    while (is("|")) {
      ++at_;
      x = Path::make_or(x, path_and());
    }
    if (is(">")) {
      ++at_;
      PathPtr y = path();
      x = Path::make_not(Path::make_and(x, Path::make_not(y)));
    }
    return x;
  }

  PathPtr path_and() {
    PathPtr x = path_unary();
    while (is("&")) {
      ++at_;
      x = Path::make_and(x, path_unary());
    }
    return x;
  }

  PathPtr path_unary() {
    err_pos_ = 0;
    err_msg_.clear();
    if (auto c = attempt([&] { return chain(); })) return *c;
    if (is("!")) {
      ++at_;
      return Path::make_not(path_unary());
    }
    if (is("(")) {
      if (auto p = attempt([&] {
            ++at_;
            PathPtr q = path();
            expect(")");
            return q;
          }))
        return *p;
    }
    if (is("F") || is("G")) {
      const bool ev = is("F");
      ++at_;
      TimeWindow w = window();
      StatePtr s = state();
      return ev ? Path::eventually(w, s) : Path::always(w, s);
    }
    rethrow_furthest();
  }

  // chain := state ("U" window state)*
  PathPtr chain() {
    StatePtr first = state();
    std::vector<std::pair<TimeWindow, StatePtr>> steps;
    while (is("U")) {
      ++at_;
      TimeWindow w = window();
      steps.emplace_back(w, state());
    }
    if (steps.empty()) return Path::make_state(first);
    return Path::make_until(first, std::move(steps));
  }
};

}  // namespace

PathPtr parse(const std::string& text) { return Parser(text).whole_path(); }

StatePtr parse_state(const std::string& text) { return Parser(text).whole_state(); }

}  // namespace cll::logic
