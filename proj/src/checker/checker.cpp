#include "cll/checker/checker.hpp"

#include <algorithm>
#include <memory>

#include "cll/pef/squarefree.hpp"

namespace cll::checker {

using logic::Path;
using logic::State;
using pef::IsolatingInterval;
using pef::Pef;
using pef::RealPef;
using pef::RootRef;

namespace {

bool inside(const ctmc::ProbInterval& I, int sl, int sh) {
  return (sl > 0 || (sl == 0 && I.low_closed)) && (sh < 0 || (sh == 0 && I.high_closed));
}

// f >= 0 and f <= 1 always, so these ends never constrain
bool trivial_low(const ctmc::ProbInterval& I) { return sgn(I.low) == 0 && I.low_closed; }
bool trivial_high(const ctmc::ProbInterval& I) { return I.high == 1 && I.high_closed; }

}  // namespace

std::string Witness::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k) out += "; ";
    out += "s" + std::to_string(k) + " = " + times[k].to_string();
  }
  for (std::size_t k = 0; k < stretches.size(); ++k) out += "; I" + std::to_string(k + 1) + " = " + stretches[k].to_string();
  return out;
}

Checker::Checker(const ctmc::CTMC& chain, Distribution mu, CheckOptions opt)
    : chain_(chain), mu_(std::move(mu)), opt_(std::move(opt)), traj_(chain_, mu_), ord_(opt_.compare) {}

RealPef Checker::offset_pef(int state, const Rational& c) const {
  const Pef& f = traj_.coord(state).pef();
  return RealPef(f - Pef::constant(algebra::FieldElem(c), f.field()));
}

std::vector<SymbolicTime> Checker::crossings(int state, const Rational& c, const Rational& T) {
  auto key = std::make_pair(state, c);
  auto it = roots_.find(key);
  if (it == roots_.end() || it->second.horizon < T) {
    RootCache rc{T, {}};
    RealPef g = offset_pef(state, c);
    if (!g.pef().is_zero() && sgn(T) > 0) {
      RealPef s(pef::square_free_part(g.pef()));
      for (const IsolatingInterval& iv : pef::isolate_square_free(s, 0, T, opt_.isolation))
        rc.roots.emplace_back(std::make_shared<const RootRef>(s, iv));
    }
    it = roots_.insert_or_assign(key, std::move(rc)).first;
  }
  std::vector<SymbolicTime> out;
  for (const auto& r : it->second.roots) {
    if (it->second.horizon == T || ord_.cmp(r, SymbolicTime(T)) < 0) out.push_back(r);
  }
  return out;
}

int Checker::sign_at(int state, const Rational& c, const SymbolicTime& t) {
  RealPef g = offset_pef(state, c);
  if (auto e = t.exact()) return g.sign_at(*e);
  return pef::sign_at(g, t, opt_.compare);
}

IntervalSet Checker::atom_intervals(const Atom& a, const Rational& T) {
  const auto& I = a.interval;
  const int i = a.state;
  if (i < 1 || static_cast<std::size_t>(i) > chain_.size()) throw PreconditionViolation("atom " + a.to_string() + " refers to a missing state");
  const bool use_low = !trivial_low(I), use_high = !trivial_high(I);
  if (!use_low && !use_high) return ord_.normalize({SymbolicInterval::closed(Rational(0), T)});

  // candidate boundaries with the signs of f - low and f - high there
  struct Pt {
    SymbolicTime t;
    int sl, sh;
  };
  std::vector<Pt> lows, highs;
  if (use_low)
    for (auto& r : crossings(i, I.low, T)) lows.push_back({r, 0, sgn(I.low - I.high)});
  if (use_high && (I.high != I.low || !use_low))
    for (auto& r : crossings(i, I.high, T)) highs.push_back({r, I.high == I.low ? 0 : sgn(I.high - I.low), 0});
  std::vector<Pt> pts;
  std::merge(lows.begin(), lows.end(), highs.begin(), highs.end(), std::back_inserter(pts),
             [&](const Pt& x, const Pt& y) { return ord_.cmp(x.t, y.t) < 0; });

  auto signs = [&](const Rational& t) -> std::pair<int, int> {
    return {use_low ? sign_at(i, I.low, t) : 1, use_high ? sign_at(i, I.high, t) : -1};
  };
  auto [l0, h0] = signs(0);
  pts.insert(pts.begin(), Pt{Rational(0), l0, h0});
  if (sgn(T) > 0) {
    auto [lT, hT] = signs(T);
    pts.push_back({T, lT, hT});
  }
  if (!use_low)
    for (auto& p : pts) p.sl = 1;
  if (!use_high)
    for (auto& p : pts) p.sh = -1;

  std::vector<SymbolicInterval> pieces;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (inside(I, pts[j].sl, pts[j].sh)) pieces.push_back(SymbolicInterval::point(pts[j].t));
    if (j + 1 < pts.size()) {
      auto [sl, sh] = signs(ord_.rational_between(pts[j].t, pts[j + 1].t));
      if (inside(I, sl, sh)) pieces.push_back({pts[j].t, pts[j + 1].t, false, false});
    }
  }
  return ord_.normalize(std::move(pieces));
}

IntervalSet Checker::state_intervals(const logic::CNF& phi, const Rational& T) {
  IntervalSet out = ord_.normalize({SymbolicInterval::closed(Rational(0), T)});
  if (phi.is_false()) return {};
  for (const auto& clause : phi.clauses) {
    IntervalSet u;
    for (const auto& a : clause) u = ord_.unite(u, atom_intervals(a, T));
    out = ord_.intersect(out, u);
    if (out.empty()) break;
  }
  return out;
}

bool Checker::holds_at(const StatePtr& phi, const SymbolicTime& t) {
  switch (phi->kind) {
    case State::Kind::True: return true;
    case State::Kind::Atom: {
      const auto& I = phi->atom.interval;
      int sl = trivial_low(I) ? 1 : sign_at(phi->atom.state, I.low, t);
      int sh = trivial_high(I) ? -1 : sign_at(phi->atom.state, I.high, t);
      return inside(I, sl, sh);
    }
    case State::Kind::Not: return !holds_at(phi->a, t);
    case State::Kind::And: return holds_at(phi->a, t) && holds_at(phi->b, t);
  }
  return false;
}

Rational horizon(const PathPtr& leaf) {
  Rational h = 0;
  if (leaf->kind == Path::Kind::Until)
    for (const auto& st : leaf->steps) h += st.first.high;
  return h;
}

LeafVerdict Checker::check_until_chain(const PathPtr& chain) {
  if (chain->kind != Path::Kind::Until) throw PreconditionViolation("check_until_chain needs an until chain");
  const auto& steps = chain->steps;
  const std::size_t n = steps.size();
  std::vector<Rational> H(n + 1, Rational(0));
  for (std::size_t k = 1; k <= n; ++k) H[k] = H[k - 1] + steps[k - 1].first.high;

  LeafVerdict v;
  v.leaf = chain;
  // Phi_{k-1} matters on [0, H_k], Phi_n on [0, H_n]
  for (std::size_t k = 0; k <= n; ++k) {
    const StatePtr& phi = k == 0 ? chain->state : steps[k - 1].second;
    v.levels.push_back(state_intervals(phi, H[std::min(k + 1, n)]));
  }

  v.reachable.push_back(ord_.normalize({SymbolicInterval::point(Rational(0))}));
  for (std::size_t k = 1; k <= n; ++k) {
    const TimeWindow& T = steps[k - 1].first;
    const IntervalSet& G = v.levels[k - 1];
    std::vector<SymbolicInterval> pieces;
    for (const auto& C : v.reachable[k - 1].intervals) {
      // t = inf T leaves nothing to check before the switch
      if (T.low_closed) pieces.push_back(shift(C, T.low));
      for (const auto& J : G.intervals) {
        // s + inf T must start a stretch inside J
        SymbolicInterval start = T.low_closed ? shift(J, -T.low) : SymbolicInterval{J.low - T.low, J.high - T.low, true, false};
        SymbolicInterval D = ord_.intersect(C, start);
        if (ord_.is_empty(D)) continue;
        pieces.push_back(ord_.intersect(minkowski(D, T), SymbolicInterval::closed(Rational(0), J.high)));
      }
    }
    v.reachable.push_back(ord_.normalize(std::move(pieces)));
    if (v.reachable.back().empty()) break;
  }
  if (v.reachable.size() != n + 1) return v;
  IntervalSet final_set = ord_.intersect(v.reachable[n], v.levels[n]);
  if (final_set.empty()) return v;
  v.holds = true;

  // walk back from a satisfying switching time
  Witness w;
  w.times.assign(n + 1, SymbolicTime(Rational(0)));
  w.stretches.resize(n);
  SymbolicTime x = ord_.pick(final_set.intervals.front());
  w.times[n] = x;
  for (std::size_t k = n; k >= 1; --k) {
    const TimeWindow& T = steps[k - 1].first;
    SymbolicInterval from{x - T.high, x - T.low, T.high_closed, T.low_closed};
    std::vector<SymbolicInterval> pieces;
    if (T.low_closed) pieces.push_back(SymbolicInterval::point(x - T.low));
    for (const auto& J : v.levels[k - 1].intervals) {
      if (ord_.cmp(x, J.high) > 0) continue;
      SymbolicInterval start = T.low_closed ? shift(J, -T.low) : SymbolicInterval{J.low - T.low, J.high - T.low, true, false};
      pieces.push_back(ord_.intersect(from, start));
    }
    IntervalSet V = ord_.intersect(ord_.normalize(std::move(pieces)), v.reachable[k - 1]);
    if (V.empty()) throw Error("witness reconstruction failed at level " + std::to_string(k));
    SymbolicTime s = ord_.pick(V.intervals.front());
    w.stretches[k - 1] = {s + T.low, x, T.low_closed, false};
    w.times[k - 1] = s;
    x = s;
  }
  v.witness = std::move(w);
  return v;
}

LeafVerdict Checker::check_leaf(const PathPtr& leaf) {
  if (leaf->kind == Path::Kind::Until) return check_until_chain(leaf);
  LeafVerdict v;
  v.leaf = leaf;
  if (leaf->kind == Path::Kind::True) {
    v.holds = true;
  } else if (leaf->kind == Path::Kind::State) {
    v.holds = logic::holds(leaf->state, mu_);
  } else {
    throw PreconditionViolation("leaf must be an until chain or a state query");
  }
  if (v.holds) v.witness = Witness{{SymbolicTime(Rational(0))}, {}};
  return v;
}

Verdict Checker::check(const PathPtr& phi) {
  Verdict out;
  std::vector<std::pair<const Path*, bool>> seen;
  auto eval = [&](auto&& self, const logic::PathNF& nf) -> bool {
    using K = logic::PathNF::Kind;
    switch (nf.kind) {
      case K::True: return true;
      case K::False: return false;
      case K::Leaf:
      case K::NotLeaf: {
        bool h = false;
        auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == nf.leaf.get(); });
        if (it != seen.end()) {
          h = it->second;
        } else {
          out.leaves.push_back(check_leaf(nf.leaf));
          h = out.leaves.back().holds;
          seen.emplace_back(nf.leaf.get(), h);
        }
        return nf.kind == K::Leaf ? h : !h;
      }
      case K::And:
      case K::Or: {
        // every leaf is evaluated so the report is complete
        bool acc = nf.kind == K::And;
        for (const auto& c : nf.children) {
          bool r = self(self, c);
          acc = nf.kind == K::And ? (acc && r) : (acc || r);
        }
        return acc;
      }
    }
    return false;
  };
  out.satisfied = eval(eval, logic::normalize_path(phi));
  return out;
}

std::vector<std::string> Checker::verify_witness(const PathPtr& chain, const Witness& w) {
  std::vector<std::string> bad;
  if (chain->kind != Path::Kind::Until) {
    const bool ok = chain->kind == Path::Kind::True || logic::holds(chain->state, mu_);
    if (!ok) bad.push_back("state query fails at time 0");
    return bad;
  }
  const auto& steps = chain->steps;
  const std::size_t n = steps.size();
  if (w.times.size() != n + 1 || w.stretches.size() != n) return {"witness has the wrong length"};
  if (ord_.cmp(w.times[0], Rational(0)) != 0) bad.push_back("s0 is not 0");
  const Rational H = horizon(chain);
  for (std::size_t k = 1; k <= n; ++k) {
    const TimeWindow& T = steps[k - 1].first;
    const SymbolicTime &s = w.times[k - 1], &x = w.times[k];
    int lo = ord_.cmp(x, s, T.low), hi = ord_.cmp(x, s, T.high);
    if (lo < 0 || (lo == 0 && !T.low_closed) || hi > 0 || (hi == 0 && !T.high_closed))
      bad.push_back("s" + std::to_string(k) + " - s" + std::to_string(k - 1) + " is outside " + T.to_string());
    SymbolicInterval expect{s + T.low, x, T.low_closed, false};
    const SymbolicInterval& I = w.stretches[k - 1];
    if (ord_.cmp(I.low, expect.low) != 0 || ord_.cmp(I.high, expect.high) != 0 || I.low_closed != expect.low_closed || I.high_closed)
      bad.push_back("stretch I" + std::to_string(k) + " does not match the switching times");
    const StatePtr& phi = k == 1 ? chain->state : steps[k - 2].second;
    if (!ord_.covered(I, state_intervals(phi, H))) bad.push_back("Phi" + std::to_string(k - 1) + " fails somewhere on I" + std::to_string(k));
    if (!ord_.is_empty(I) && !holds_at(phi, ord_.pick(I))) bad.push_back("Phi" + std::to_string(k - 1) + " fails inside I" + std::to_string(k));
  }
  if (!holds_at(steps.back().second, w.times[n])) bad.push_back("Phi" + std::to_string(n) + " fails at s" + std::to_string(n));
  return bad;
}

Verdict model_check(const ctmc::SymbolizedCTMC& model, const Distribution& mu, const PathPtr& phi, const CheckOptions& opt) {
  auto problems = logic::check_bound(phi, model.chain.size());
  if (!problems.empty()) throw PreconditionViolation(problems.front());
  Checker c(model.chain, mu, opt);
  Verdict v = c.check(phi);
  // atoms outside the model's interval set are allowed but reported
  std::vector<Atom> atoms;
  auto collect = [&](auto&& self, const StatePtr& s) -> void {
    if (!s) return;
    if (s->kind == State::Kind::Atom) atoms.push_back(s->atom);
    self(self, s->a);
    self(self, s->b);
  };
  auto walk = [&](auto&& self, const PathPtr& p) -> void {
    if (!p) return;
    collect(collect, p->state);
    for (const auto& st : p->steps) collect(collect, st.second);
    self(self, p->a);
    self(self, p->b);
  };
  walk(walk, phi);
  if (!model.intervals.empty())
    for (const auto& a : atoms)
      if (std::find(model.intervals.begin(), model.intervals.end(), a.interval) == model.intervals.end())
        v.diagnostics.push_back("warning: interval " + a.interval.to_string() + " of atom " + a.to_string() + " is not in the model's interval set");
  return v;
}

IntervalSet atom_intervals(const ctmc::CTMC& chain, const Distribution& mu, const Atom& a, const Rational& T) {
  return Checker(chain, mu).atom_intervals(a, T);
}

IntervalSet state_intervals(const ctmc::CTMC& chain, const Distribution& mu, const logic::CNF& phi, const Rational& T) {
  return Checker(chain, mu).state_intervals(phi, T);
}

}  // namespace cll::checker
