#include "cll/logic/formula.hpp"

#include <algorithm>

namespace cll::logic {

using ctmc::format_rational;

StatePtr State::make_true() {
  static StatePtr t = std::make_shared<State>();
  return t;
}

StatePtr State::make_false() { return make_not(make_true()); }

StatePtr State::make_atom(Atom atom) {
  auto s = std::make_shared<State>();
  s->kind = Kind::Atom;
  s->atom = std::move(atom);
  return s;
}

StatePtr State::make_not(StatePtr x) {
  auto s = std::make_shared<State>();
  s->kind = Kind::Not;
  s->a = std::move(x);
  return s;
}

StatePtr State::make_and(StatePtr x, StatePtr y) {
  auto s = std::make_shared<State>();
  s->kind = Kind::And;
  s->a = std::move(x);
  s->b = std::move(y);
  return s;
}

StatePtr State::make_or(StatePtr x, StatePtr y) { return make_not(make_and(make_not(std::move(x)), make_not(std::move(y)))); }

StatePtr State::make_implies(StatePtr x, StatePtr y) { return make_not(make_and(std::move(x), make_not(std::move(y)))); }

bool TimeWindow::contains(const Rational& t) const {
  return (low_closed ? low <= t : low < t) && (high_closed ? t <= high : t < high);
}

bool TimeWindow::empty() const { return low > high || (low == high && !(low_closed && high_closed)); }

std::string TimeWindow::to_string() const {
  return std::string(low_closed ? "[" : "(") + format_rational(low) + "," + format_rational(high) + (high_closed ? "]" : ")");
}

PathPtr Path::make_true() {
  static PathPtr t = std::make_shared<Path>();
  return t;
}

PathPtr Path::make_state(StatePtr s) {
  if (s->kind == State::Kind::True) return make_true();
  auto p = std::make_shared<Path>();
  p->kind = Kind::State;
  p->state = std::move(s);
  return p;
}

PathPtr Path::make_until(StatePtr phi0, std::vector<std::pair<TimeWindow, StatePtr>> steps) {
  if (steps.empty()) throw PreconditionViolation("until chain needs at least one step");
  auto p = std::make_shared<Path>();
  p->kind = Kind::Until;
  p->state = std::move(phi0);
  p->steps = std::move(steps);
  return p;
}

PathPtr Path::make_not(PathPtr x) {
  auto p = std::make_shared<Path>();
  p->kind = Kind::Not;
  p->a = std::move(x);
  return p;
}

PathPtr Path::make_and(PathPtr x, PathPtr y) {
  auto p = std::make_shared<Path>();
  p->kind = Kind::And;
  p->a = std::move(x);
  p->b = std::move(y);
  return p;
}

PathPtr Path::make_or(PathPtr x, PathPtr y) { return make_not(make_and(make_not(std::move(x)), make_not(std::move(y)))); }

PathPtr Path::eventually(const TimeWindow& w, StatePtr phi) { return make_until(State::make_true(), {{w, std::move(phi)}}); }

PathPtr Path::always(const TimeWindow& w, StatePtr phi) { return make_not(eventually(w, State::make_not(std::move(phi)))); }

bool equal(const StatePtr& x, const StatePtr& y) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case State::Kind::True: return true;
    case State::Kind::Atom: return x->atom == y->atom;
    case State::Kind::Not: return equal(x->a, y->a);
    case State::Kind::And: return equal(x->a, y->a) && equal(x->b, y->b);
  }
  return false;
}

bool equal(const PathPtr& x, const PathPtr& y) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Path::Kind::True: return true;
    case Path::Kind::State: return equal(x->state, y->state);
    case Path::Kind::Until:
      if (!equal(x->state, y->state) || x->steps.size() != y->steps.size()) return false;
      for (std::size_t k = 0; k < x->steps.size(); ++k)
        if (!(x->steps[k].first == y->steps[k].first) || !equal(x->steps[k].second, y->steps[k].second)) return false;
      return true;
    case Path::Kind::Not: return equal(x->a, y->a);
    case Path::Kind::And: return equal(x->a, y->a) && equal(x->b, y->b);
  }
  return false;
}

std::string to_string(const StatePtr& s) {
  switch (s->kind) {
    case State::Kind::True: return "true";
    case State::Kind::Atom: return "P[" + std::to_string(s->atom.state) + "] in " + s->atom.interval.to_string();
    case State::Kind::Not:
      if (s->a->kind == State::Kind::True) return "false";
      if (s->a->kind == State::Kind::And) return "!" + to_string(s->a);
      return "!(" + to_string(s->a) + ")";
    case State::Kind::And: return "(" + to_string(s->a) + " & " + to_string(s->b) + ")";
  }
  return "";
}

namespace {

std::string wrap(const StatePtr& s) {
  std::string t = to_string(s);
  if (s->kind == State::Kind::Atom || s->kind == State::Kind::True || t.front() == '(') return t;
  return "(" + t + ")";
}

}  // namespace

std::string to_string(const PathPtr& p) {
  switch (p->kind) {
    case Path::Kind::True: return "true";
    case Path::Kind::State: return wrap(p->state);
    case Path::Kind::Until: {
      std::string out = wrap(p->state);
      for (const auto& [w, s] : p->steps) out += " U" + w.to_string() + " " + wrap(s);
      return out;
    }
    case Path::Kind::Not: return "!(" + to_string(p->a) + ")";
    case Path::Kind::And: return "(" + to_string(p->a) + " & " + to_string(p->b) + ")";
  }
  return "";
}

namespace {

void collect_atoms(const StatePtr& s, std::vector<Atom>& out) {
  if (!s) return;
  if (s->kind == State::Kind::Atom) out.push_back(s->atom);
  collect_atoms(s->a, out);
  collect_atoms(s->b, out);
}

void collect_atoms(const PathPtr& p, std::vector<Atom>& out) {
  if (!p) return;
  collect_atoms(p->state, out);
  for (const auto& st : p->steps) collect_atoms(st.second, out);
  collect_atoms(p->a, out);
  collect_atoms(p->b, out);
}

}  // namespace

std::vector<std::string> check_bound(const PathPtr& p, std::size_t d) {
  std::vector<Atom> atoms;
  collect_atoms(p, atoms);
  std::vector<std::string> out;
  for (const auto& a : atoms)
    if (a.state < 1 || static_cast<std::size_t>(a.state) > d)
      out.push_back("atom " + a.to_string() + " refers to state " + std::to_string(a.state) + " but the model has " + std::to_string(d));
  return out;
}

bool CNF::is_false() const {
  return std::any_of(clauses.begin(), clauses.end(), [](const auto& c) { return c.empty(); });
}

std::string CNF::to_string() const {
  if (is_true()) return "true";
  std::string out;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (i) out += " & ";
    out += "(";
    if (clauses[i].empty()) out += "false";
    for (std::size_t j = 0; j < clauses[i].size(); ++j) out += (j ? " | " : "") + clauses[i][j].to_string();
    out += ")";
  }
  return out;
}

std::vector<Atom> complement(const Atom& a) {
  const auto& I = a.interval;
  std::vector<Atom> out;
  ProbInterval left{Rational(0), I.low, true, !I.low_closed};
  ProbInterval right{I.high, Rational(1), !I.high_closed, true};
  if (!left.empty() && sgn(left.high) >= 0) out.push_back({a.state, left});
  if (!right.empty() && right.low <= 1) out.push_back({a.state, right});
  return out;
}

namespace {

bool always_true(const Atom& a) {
  return sgn(a.interval.low) <= 0 && a.interval.low_closed && a.interval.high >= 1 && a.interval.high_closed;
}

CNF conj(CNF x, const CNF& y) {
  x.clauses.insert(x.clauses.end(), y.clauses.begin(), y.clauses.end());
  return x;
}

CNF disj(const CNF& x, const CNF& y) {
  if (x.is_true() || y.is_true()) return {};
  CNF out;
  for (const auto& c : x.clauses)
    for (const auto& d : y.clauses) {
      std::vector<Atom> e = c;
      for (const auto& a : d)
        if (std::find(e.begin(), e.end(), a) == e.end()) e.push_back(a);
      out.clauses.push_back(std::move(e));
    }
  return out;
}

CNF cnf(const StatePtr& s, bool negate) {
  switch (s->kind) {
    case State::Kind::True: return negate ? CNF{{{}}} : CNF{};
    case State::Kind::Atom: {
      std::vector<Atom> c = negate ? complement(s->atom) : std::vector<Atom>{s->atom};
      if (std::any_of(c.begin(), c.end(), always_true)) return {};
      return CNF{{c}};
    }
    case State::Kind::Not: return cnf(s->a, !negate);
    case State::Kind::And:
      return negate ? disj(cnf(s->a, true), cnf(s->b, true)) : conj(cnf(s->a, false), cnf(s->b, false));
  }
  return {};
}

}  // namespace

CNF to_cnf(const StatePtr& s) {
  CNF c = cnf(s, false);
  if (c.is_false()) return CNF{{{}}};
  for (auto& cl : c.clauses) std::sort(cl.begin(), cl.end());
  std::sort(c.clauses.begin(), c.clauses.end());
  c.clauses.erase(std::unique(c.clauses.begin(), c.clauses.end()), c.clauses.end());
  return c;
}

bool holds(const StatePtr& s, const ctmc::Distribution& mu) {
  switch (s->kind) {
    case State::Kind::True: return true;
    case State::Kind::Atom: return s->atom.interval.contains(mu.at(static_cast<std::size_t>(s->atom.state - 1)));
    case State::Kind::Not: return !holds(s->a, mu);
    case State::Kind::And: return holds(s->a, mu) && holds(s->b, mu);
  }
  return false;
}

std::string PathNF::to_string() const {
  switch (kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Leaf: return logic::to_string(leaf);
    case Kind::NotLeaf: return "!(" + logic::to_string(leaf) + ")";
    case Kind::And:
    case Kind::Or: {
      std::string out = "(";
      for (std::size_t i = 0; i < children.size(); ++i)
        out += (i ? (kind == Kind::And ? " & " : " | ") : "") + children[i].to_string();
      return out + ")";
    }
  }
  return "";
}

namespace {

PathNF nf(const PathPtr& p, bool negate) {
  using K = PathNF::Kind;
  switch (p->kind) {
    case Path::Kind::True: return {negate ? K::False : K::True, nullptr, {}};
    case Path::Kind::State:
    case Path::Kind::Until: return {negate ? K::NotLeaf : K::Leaf, p, {}};
    case Path::Kind::Not: return nf(p->a, !negate);
    case Path::Kind::And: {
      // De Morgan under negation
      const K op = negate ? K::Or : K::And;
      const K unit = negate ? K::False : K::True, zero = negate ? K::True : K::False;
      PathNF out{op, nullptr, {}};
      for (const PathNF& c : {nf(p->a, negate), nf(p->b, negate)}) {
        if (c.kind == unit) continue;
        if (c.kind == zero) return {zero, nullptr, {}};
        if (c.kind == op)
          out.children.insert(out.children.end(), c.children.begin(), c.children.end());
        else
          out.children.push_back(c);
      }
      if (out.children.empty()) return {unit, nullptr, {}};
      if (out.children.size() == 1) return out.children[0];
      return out;
    }
  }
  return {};
}

}  // namespace

PathNF normalize_path(const PathPtr& p) { return nf(p, false); }

}  // namespace cll::logic
