#include "cll/cli/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cll/logic/formula.hpp"

namespace cll::cli {

using json = nlohmann::json;
using algebra::FieldElem;
using algebra::FieldPtr;
using algebra::QPoly;

namespace {

std::string join_messages(const std::vector<ctmc::Diagnostic>& d) {
  std::string s = "invalid model";
  for (const auto& x : d) s += "\n  " + x.to_string();
  return s;
}

struct Reader {
  std::vector<ctmc::Diagnostic> diags;

  std::optional<Rational> rational(const json& v, const std::string& where) {
    try {
      if (v.is_string()) return algebra::parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<long>());
      diags.push_back({where, "expected a rational string such as \"3/40\" or \"0.25\""});
    } catch (const Error& e) {
      diags.push_back({where, e.what()});
    }
    return std::nullopt;
  }

  std::optional<bool> flag(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return true;
    if (obj[key].is_boolean()) return obj[key].get<bool>();
    diags.push_back({where + "." + key, "expected true or false"});
    return std::nullopt;
  }
};

}  // namespace

ModelError::ModelError(std::vector<ctmc::Diagnostic> d) : Error(join_messages(d)), diagnostics(std::move(d)) {}

Model parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::vector<ctmc::Diagnostic>{{"model", std::string("not valid JSON: ") + e.what()}});
  }
  if (!doc.is_object()) throw ModelError(std::vector<ctmc::Diagnostic>{{"model", "expected an object"}});
  Reader rd;
  for (const char* key : {"Q", "initial"})
    if (!doc.contains(key)) rd.diags.push_back({"model", std::string("missing field \"") + key + "\""});
  if (!rd.diags.empty()) throw ModelError(rd.diags);

  const json& q = doc["Q"];
  if (!q.is_array() || q.empty()) throw ModelError(std::vector<ctmc::Diagnostic>{{"Q", "expected a non-empty list of rows"}});
  const std::size_t d = q.size();
  Model m;
  m.model.chain.Q = algebra::RationalMatrix(d, d, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    const std::string row = "Q row " + std::to_string(i + 1);
    if (!q[i].is_array() || q[i].size() != d) {
      rd.diags.push_back({row, "expected " + std::to_string(d) + " entries"});
      continue;
    }
    for (std::size_t j = 0; j < d; ++j)
      if (auto x = rd.rational(q[i][j], "Q[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]"))
        m.model.chain.Q(i, j) = *x;
  }

  if (doc.contains("states")) {
    const json& s = doc["states"];
    if (!s.is_array() || s.size() != d)
      rd.diags.push_back({"states", "expected " + std::to_string(d) + " names"});
    else
      for (const auto& x : s) m.model.chain.states.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  } else {
    for (std::size_t i = 0; i < d; ++i) m.model.chain.states.push_back("s" + std::to_string(i + 1));
  }

  const json& init = doc["initial"];
  if (!init.is_array() || init.size() != d) {
    rd.diags.push_back({"initial", "expected " + std::to_string(d) + " entries"});
  } else {
    for (std::size_t i = 0; i < d; ++i)
      m.initial.push_back(rd.rational(init[i], "initial[" + std::to_string(i + 1) + "]").value_or(Rational(0)));
  }

  if (doc.contains("intervals")) {
    const json& iv = doc["intervals"];
    if (!iv.is_array()) rd.diags.push_back({"intervals", "expected a list"});
    else
      for (std::size_t k = 0; k < iv.size(); ++k) {
        const std::string where = "interval " + std::to_string(k + 1);
        const json& x = iv[k];
        if (!x.is_object() || !x.contains("low") || !x.contains("high")) {
          rd.diags.push_back({where, "expected {low, high, low_closed, high_closed}"});
          continue;
        }
        ctmc::ProbInterval p;
        auto lo = rd.rational(x["low"], where + ".low");
        auto hi = rd.rational(x["high"], where + ".high");
        auto lc = rd.flag(x, "low_closed", where);
        auto hc = rd.flag(x, "high_closed", where);
        if (!lo || !hi || !lc || !hc) continue;
        p.low = *lo;
        p.high = *hi;
        p.low_closed = *lc;
        p.high_closed = *hc;
        m.model.intervals.push_back(p);
      }
  }
  if (!rd.diags.empty()) throw ModelError(rd.diags);

  auto diags = ctmc::validate(m.model);
  auto more = ctmc::validate_distribution(m.initial, d);
  diags.insert(diags.end(), more.begin(), more.end());
  if (!diags.empty()) throw ModelError(diags);
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(std::vector<ctmc::Diagnostic>{{path, "cannot open file"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model load_model(const std::string& path) { return parse_model(read_file(path)); }

namespace {

// a + b i
using Complex = std::pair<Rational, Rational>;

Complex mul(const Complex& x, const Complex& y) {
  return {x.first * y.first - x.second * y.second, x.first * y.second + x.second * y.first};
}

// exponent -> (power of t -> coefficient)
using Expr = std::map<Complex, std::map<int, Complex>>;

void add_into(Expr& acc, const Expr& x, int sign) {
  for (const auto& [e, poly] : x)
    for (const auto& [k, c] : poly) {
      auto& slot = acc[e][k];
      slot.first += sign * c.first;
      slot.second += sign * c.second;
    }
}

Expr times(const Expr& x, const Expr& y) {
  Expr out;
  for (const auto& [e1, p1] : x)
    for (const auto& [e2, p2] : y) {
      Complex e{e1.first + e2.first, e1.second + e2.second};
      for (const auto& [k1, c1] : p1)
        for (const auto& [k2, c2] : p2) {
          Complex c = mul(c1, c2);
          auto& slot = out[e][k1 + k2];
          slot.first += c.first;
          slot.second += c.second;
        }
    }
  return out;
}

Expr constant(const Complex& c) { return {{Complex{0, 0}, {{0, c}}}}; }

class PefParser {
 public:
  explicit PefParser(const std::string& s) : s_(s) {}

  Expr parse() {
    Expr e = sum();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw logic::SyntaxError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Expr sum() {
    Expr acc;
    int sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    add_into(acc, product(), sign);
    for (;;) {
      if (eat('+')) sign = 1;
      else if (eat('-')) sign = -1;
      else return acc;
      add_into(acc, product(), sign);
    }
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i' || c == 't' || c == 'e' || c == '(';
  }

  // explicit '*' and '/' or juxtaposition
  Expr product() {
    Expr acc = factor();
    for (;;) {
      if (eat('*')) acc = times(acc, factor());
      else if (eat('/')) acc = divide(acc);
      else if (starts_factor()) acc = times(acc, factor());
      else return acc;
    }
  }

  Expr divide(const Expr& x) {
    Rational d = number();
    if (sgn(d) == 0) fail("division by zero");
    return times(x, constant({1 / d, 0}));
  }

  Rational number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("expected a number");
    return algebra::parse_rational(s_.substr(start, pos_ - start));
  }

  Expr factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Rational q = number();
      // "2/3" is one number
      if (peek('/') && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        Rational d = number();
        if (sgn(d) == 0) fail("division by zero");
        q /= d;
      }
      return constant({q, 0});
    }
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      expect(')');
      return e;
    }
    if (c == 'i') {
      ++pos_;
      return constant({0, 1});
    }
    if (c == 't') {
      ++pos_;
      int k = 1;
      if (eat('^')) {
        Rational q = number();
        if (q.get_den() != 1 || q > 64) fail("expected a small integer power of t");
        k = static_cast<int>(q.get_num().get_si());
      }
      return {{Complex{0, 0}, {{k, Complex{1, 0}}}}};
    }
    if (s_.compare(pos_, 4, "exp(") == 0) {
      pos_ += 4;
      Expr arg = sum();
      expect(')');
      return exponential(arg);
    }
    if (c == 'e') {
      ++pos_;
      expect('^');
      if (eat('{')) {
        Expr arg = sum();
        expect('}');
        return exponential(arg);
      }
      if (eat('(')) {
        Expr arg = sum();
        expect(')');
        return exponential(arg);
      }
      // e^-2t, e^it: a signed run of juxtaposed factors
      int sign = eat('-') ? -1 : 1;
      Expr arg = factor();
      while (starts_factor() && !peek('e')) arg = times(arg, factor());
      return exponential(times(arg, constant({sign, 0})));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // the argument has to be c * t
  Expr exponential(const Expr& arg) {
    Complex lambda{0, 0};
    for (const auto& [e, poly] : arg)
      for (const auto& [k, c] : poly) {
        if (sgn(c.first) == 0 && sgn(c.second) == 0) continue;
        if (e != Complex{0, 0} || k != 1) fail("exponent must be a constant times t");
        lambda = c;
      }
    return {{lambda, {{0, Complex{1, 0}}}}};
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

FieldPtr gaussian() {
  static const FieldPtr K = [] {
    QPoly x2p1{Rational(1), Rational(0), Rational(1)};
    return algebra::NumberField::make(x2p1, algebra::AlgebraicNumber(x2p1, algebra::CQ(0, 1), Rational(1, 2)));
  }();
  return K;
}

}  // namespace

pef::Pef parse_pef(const std::string& text) {
  Expr e = PefParser(text).parse();
  bool complex = false;
  for (const auto& [lam, poly] : e) {
    if (sgn(lam.second) != 0) complex = true;
    for (const auto& [k, c] : poly)
      if (sgn(c.second) != 0) complex = true;
  }
  FieldPtr K = complex ? gaussian() : algebra::NumberField::rationals();
  auto elem = [&](const Complex& c) {
    return complex ? FieldElem(K, {c.first, c.second}) : FieldElem(c.first);
  };
  std::vector<pef::Term> terms;
  for (const auto& [lam, poly] : e) {
    int deg = poly.empty() ? 0 : poly.rbegin()->first;
    std::vector<FieldElem> coeffs(static_cast<std::size_t>(deg + 1), elem({0, 0}));
    for (const auto& [k, c] : poly) coeffs[static_cast<std::size_t>(k)] = elem(c);
    terms.push_back({algebra::KPoly(std::move(coeffs)), elem(lam)});
  }
  return pef::Pef(K, std::move(terms));
}

}  // namespace cll::cli
