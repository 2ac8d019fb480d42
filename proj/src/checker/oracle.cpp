#include "cll/checker/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace cll::checker {

using algebra::Rational;
using logic::Path;
using logic::PathPtr;
using logic::State;
using logic::StatePtr;

namespace {

using Row = std::vector<long double>;

long double to_ld(const Rational& q) {
  // two-part conversion keeps about 100 bits
  const double hi = algebra::to_double(q);
  const double lo = algebra::to_double(q - Rational(hi));
  return static_cast<long double>(hi) + static_cast<long double>(lo);
}

long ceil_div(const Rational& x) {
  algebra::Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r.get_si();
}

long floor_div(const Rational& x) {
  algebra::Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r.get_si();
}

struct Grid {
  std::vector<Row> mu;  // mu[j] = distribution at j * h
  Rational h;
  long N = 0;

  bool holds(const StatePtr& s, long j) const {
    switch (s->kind) {
      case State::Kind::True: return true;
      case State::Kind::Atom: {
        const auto& I = s->atom.interval;
        long double p = mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(s->atom.state - 1)];
        long double lo = to_ld(I.low), hi = to_ld(I.high);
        return (I.low_closed ? p >= lo : p > lo) && (I.high_closed ? p <= hi : p < hi);
      }
      case State::Kind::Not: return !holds(s->a, j);
      case State::Kind::And: return holds(s->a, j) && holds(s->b, j);
    }
    return false;
  }

  std::vector<char> truth(const StatePtr& s) const {
    std::vector<char> out(static_cast<std::size_t>(N + 1));
    for (long j = 0; j <= N; ++j) out[static_cast<std::size_t>(j)] = holds(s, j);
    return out;
  }

  bool until(const PathPtr& p) const {
    std::vector<char> S(static_cast<std::size_t>(N + 1), 0);
    S[0] = 1;
    const std::size_t n = p->steps.size();
    for (std::size_t k = 1; k <= n; ++k) {
      const auto& T = p->steps[k - 1].first;
      const long A0 = T.low_closed ? ceil_div(T.low / h) : floor_div(T.low / h) + 1;
      const long B0 = T.high_closed ? floor_div(T.high / h) : ceil_div(T.high / h) - 1;
      std::vector<char> G = truth(k == 1 ? p->state : p->steps[k - 2].second);
      std::vector<long> run(static_cast<std::size_t>(N + 2), 0);
      for (long j = N; j >= 0; --j) run[static_cast<std::size_t>(j)] = G[static_cast<std::size_t>(j)] ? run[static_cast<std::size_t>(j + 1)] + 1 : 0;
      std::vector<long> diff(static_cast<std::size_t>(N + 2), 0);
      for (long s = 0; s <= N; ++s) {
        if (!S[static_cast<std::size_t>(s)]) continue;
        const long L = s + A0;
        if (L > N || A0 > B0) continue;
        // a left-open window needs Phi on (s + a, x), which is never empty
        if (!T.low_closed && !G[static_cast<std::size_t>(L)]) continue;
        const long hi = std::min({s + B0, L + run[static_cast<std::size_t>(L)], N});
        ++diff[static_cast<std::size_t>(L)];
        --diff[static_cast<std::size_t>(hi + 1)];
      }
      long acc = 0;
      for (long j = 0; j <= N; ++j) {
        acc += diff[static_cast<std::size_t>(j)];
        S[static_cast<std::size_t>(j)] = acc > 0;
      }
    }
    std::vector<char> G = truth(p->steps.back().second);
    for (long j = 0; j <= N; ++j)
      if (S[static_cast<std::size_t>(j)] && G[static_cast<std::size_t>(j)]) return true;
    return false;
  }
};

void collect_atoms(const StatePtr& s, std::vector<ctmc::Atom>& out) {
  if (!s) return;
  if (s->kind == State::Kind::Atom) out.push_back(s->atom);
  collect_atoms(s->a, out);
  collect_atoms(s->b, out);
}

void collect_leaves(const logic::PathNF& nf, std::vector<PathPtr>& out) {
  if (nf.leaf) out.push_back(nf.leaf);
  for (const auto& c : nf.children) collect_leaves(c, out);
}

}  // namespace

OracleResult grid_check(const ctmc::CTMC& chain, const ctmc::Distribution& mu, const PathPtr& phi, const Rational& step) {
  if (sgn(step) <= 0) throw PreconditionViolation("grid step must be positive");
  const std::size_t d = chain.size();
  const logic::PathNF nf = logic::normalize_path(phi);
  std::vector<PathPtr> leaves;
  collect_leaves(nf, leaves);

  Rational H = 0;
  for (const auto& leaf : leaves)
    if (leaf->kind == Path::Kind::Until) {
      Rational h = 0;
      for (const auto& st : leaf->steps) h += st.first.high;
      H = std::max(H, h);
    }

  Grid g;
  g.h = step;
  g.N = ceil_div(H / step);
  // one-step propagator e^{Qh}, rows from unit vectors
  std::vector<Row> P(d, Row(d));
  const Rational tight(1, algebra::Integer("1000000000000000000"));
  for (std::size_t i = 0; i < d; ++i) {
    ctmc::Distribution e(d, Rational(0));
    e[i] = 1;
    auto r = ctmc::numeric_distribution(chain, e, step, tight);
    for (std::size_t j = 0; j < d; ++j) P[i][j] = to_ld(r[j]);
  }
  g.mu.resize(static_cast<std::size_t>(g.N + 1), Row(d));
  for (std::size_t i = 0; i < d; ++i) g.mu[0][i] = to_ld(mu[i]);
  for (long j = 1; j <= g.N; ++j) {
    Row& cur = g.mu[static_cast<std::size_t>(j)];
    if (j % 2048 == 0) {
      // re-anchor on an accurate value to stop drift
      auto r = ctmc::numeric_distribution(chain, mu, step * j, tight);
      for (std::size_t i = 0; i < d; ++i) cur[i] = to_ld(r[i]);
      continue;
    }
    const Row& prev = g.mu[static_cast<std::size_t>(j - 1)];
    for (std::size_t i = 0; i < d; ++i) {
      long double s = 0;
      for (std::size_t k = 0; k < d; ++k) s += prev[k] * P[k][i];
      cur[i] = s;
    }
  }

  // leaf verdicts
  std::vector<std::pair<const Path*, bool>> verdicts;
  for (const auto& leaf : leaves) {
    bool v = leaf->kind == Path::Kind::True || (leaf->kind == Path::Kind::State ? g.holds(leaf->state, 0) : g.until(leaf));
    verdicts.emplace_back(leaf.get(), v);
  }
  auto eval = [&](auto&& self, const logic::PathNF& x) -> bool {
    using K = logic::PathNF::Kind;
    switch (x.kind) {
      case K::True: return true;
      case K::False: return false;
      case K::Leaf:
      case K::NotLeaf: {
        bool v = std::find_if(verdicts.begin(), verdicts.end(), [&](const auto& p) { return p.first == x.leaf.get(); })->second;
        return x.kind == K::Leaf ? v : !v;
      }
      case K::And:
        return std::all_of(x.children.begin(), x.children.end(), [&](const auto& c) { return self(self, c); });
      case K::Or:
        return std::any_of(x.children.begin(), x.children.end(), [&](const auto& c) { return self(self, c); });
    }
    return false;
  };

  OracleResult out;
  out.satisfied = eval(eval, nf);
  out.grid_points = static_cast<std::size_t>(g.N + 1);
  out.margin = std::numeric_limits<double>::infinity();
  out.nearest = "none";
  auto consider = [&](double m, const std::string& what) {
    if (m < out.margin) {
      out.margin = m;
      out.nearest = what;
    }
  };

  // crossing times of every nontrivial atom level
  std::vector<ctmc::Atom> atoms;
  for (const auto& leaf : leaves) {
    collect_atoms(leaf->state, atoms);
    for (const auto& st : leaf->steps) collect_atoms(st.second, atoms);
  }
  std::set<std::pair<int, Rational>> levels;
  for (const auto& a : atoms) {
    if (!(sgn(a.interval.low) == 0 && a.interval.low_closed)) levels.insert({a.state, a.interval.low});
    if (!(a.interval.high == 1 && a.interval.high_closed)) levels.insert({a.state, a.interval.high});
  }
  const double hd = algebra::to_double(step);
  std::vector<double> cross;
  for (const auto& [i, c] : levels) {
    const std::size_t col = static_cast<std::size_t>(i - 1);
    const long double cl = to_ld(c);
    if (mu[col] != c) consider(static_cast<double>(std::fabs(to_ld(mu[col]) - cl)), "initial value of state " + std::to_string(i) + " near " + ctmc::format_rational(c));
    for (long j = 0; j < g.N; ++j) {
      long double u = g.mu[static_cast<std::size_t>(j)][col] - cl, v = g.mu[static_cast<std::size_t>(j + 1)][col] - cl;
      if ((u < 0 && v >= 0) || (u > 0 && v <= 0)) cross.push_back(hd * (static_cast<double>(j) + static_cast<double>(u / (u - v))));
    }
  }
  for (const auto& leaf : leaves) {
    if (leaf->kind != Path::Kind::Until) continue;
    const auto& st = leaf->steps;
    std::vector<std::vector<double>> ends;
    for (const auto& s : st) ends.push_back({algebra::to_double(s.first.low), algebra::to_double(s.first.high)});
    // absolute times reachable by window ends, and spans of consecutive windows
    std::set<double> absolute{0.0}, spans{0.0};
    std::set<double> frontier{0.0};
    for (const auto& e : ends) {
      std::set<double> next;
      for (double f : frontier)
        for (double x : e) next.insert(f + x);
      absolute.insert(next.begin(), next.end());
      frontier = std::move(next);
    }
    for (std::size_t k = 0; k < ends.size(); ++k) {
      std::set<double> acc{0.0};
      for (std::size_t m = k; m < ends.size(); ++m) {
        std::set<double> next;
        for (double f : acc)
          for (double x : ends[m]) next.insert(f + x);
        spans.insert(next.begin(), next.end());
        acc = std::move(next);
      }
    }
    for (double c : cross)
      for (double w : absolute) consider(std::fabs(c - w), "crossing near window time " + std::to_string(w));
    for (std::size_t a = 0; a < cross.size(); ++a)
      for (std::size_t b = 0; b < cross.size(); ++b)
        if (a != b)
          for (double w : spans) consider(std::fabs(cross[a] - cross[b] - w), "two crossings " + std::to_string(w) + " apart");
  }
  return out;
}

}  // namespace cll::checker
