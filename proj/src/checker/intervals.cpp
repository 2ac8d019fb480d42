#include "cll/checker/intervals.hpp"

#include <algorithm>
#include <optional>

namespace cll::checker {

using pef::Cmp;
using pef::compare_times;

namespace {

Rational floor_q(const Rational& x) {
  algebra::Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(f);
}

// simplest rational in (a, b) for 0 <= a < b; b may be "infinite"
Rational simplest_nonneg(const Rational& a, const std::optional<Rational>& b) {
  const Rational fl = floor_q(a);
  if (!b || fl + 1 < *b) return fl + 1;
  // fl <= a < b <= fl + 1: x = fl + 1/y with y in (1/(b - fl), 1/(a - fl))
  const Rational ylo = 1 / (*b - fl);
  std::optional<Rational> yhi;
  if (a != fl) yhi = 1 / (a - fl);
  return fl + 1 / simplest_nonneg(ylo, yhi);
}

}  // namespace

Rational simplest_between(const Rational& a, const Rational& b) {
  if (!(a < b)) throw PreconditionViolation("simplest_between needs a < b");
  if (sgn(a) < 0 && sgn(b) > 0) return 0;
  if (sgn(b) <= 0) return -simplest_nonneg(-b, Rational(-a));
  return simplest_nonneg(a, b);
}

std::string SymbolicInterval::to_string() const {
  return std::string(low_closed ? "[" : "(") + low.to_string() + ", " + high.to_string() + (high_closed ? "]" : ")");
}

std::string IntervalSet::to_string() const {
  if (intervals.empty()) return "{}";
  std::string out = "{";
  for (std::size_t i = 0; i < intervals.size(); ++i) out += (i ? ", " : "") + intervals[i].to_string();
  return out + "}";
}

int TimeOrder::cmp(const SymbolicTime& a, const SymbolicTime& b, const Rational& g) const {
  return static_cast<int>(compare_times(a, b, g, opt_));
}

bool TimeOrder::is_empty(const SymbolicInterval& I) const {
  int c = cmp(I.low, I.high);
  return c > 0 || (c == 0 && !(I.low_closed && I.high_closed));
}

bool TimeOrder::contains(const SymbolicInterval& I, const SymbolicTime& t) const {
  int lo = cmp(t, I.low);
  if (lo < 0 || (lo == 0 && !I.low_closed)) return false;
  int hi = cmp(t, I.high);
  return hi < 0 || (hi == 0 && I.high_closed);
}

bool TimeOrder::contains(const IntervalSet& S, const SymbolicTime& t) const {
  return std::any_of(S.intervals.begin(), S.intervals.end(), [&](const auto& I) { return contains(I, t); });
}

bool TimeOrder::covered(const SymbolicInterval& I, const IntervalSet& S) const {
  if (is_empty(I)) return true;
  for (const auto& J : S.intervals) {
    int lo = cmp(I.low, J.low);
    bool lo_ok = lo > 0 || (lo == 0 && (J.low_closed || !I.low_closed));
    int hi = cmp(I.high, J.high);
    bool hi_ok = hi < 0 || (hi == 0 && (J.high_closed || !I.high_closed));
    if (lo_ok && hi_ok) return true;
  }
  return false;
}

SymbolicInterval TimeOrder::intersect(const SymbolicInterval& a, const SymbolicInterval& b) const {
  SymbolicInterval r = a;
  int lo = cmp(a.low, b.low);
  if (lo < 0 || (lo == 0 && !b.low_closed)) {
    r.low = b.low;
    r.low_closed = b.low_closed;
  }
  int hi = cmp(a.high, b.high);
  if (hi > 0 || (hi == 0 && !b.high_closed)) {
    r.high = b.high;
    r.high_closed = b.high_closed;
  }
  return r;
}

IntervalSet TimeOrder::normalize(std::vector<SymbolicInterval> pieces) const {
  pieces.erase(std::remove_if(pieces.begin(), pieces.end(), [&](const auto& I) { return is_empty(I); }), pieces.end());
  std::sort(pieces.begin(), pieces.end(), [&](const SymbolicInterval& x, const SymbolicInterval& y) {
    int c = cmp(x.low, y.low);
    if (c != 0) return c < 0;
    return x.low_closed && !y.low_closed;
  });
  IntervalSet out;
  for (auto& I : pieces) {
    if (!out.intervals.empty()) {
      SymbolicInterval& cur = out.intervals.back();
      int c = cmp(I.low, cur.high);
      if (c < 0 || (c == 0 && (cur.high_closed || I.low_closed))) {
        int h = cmp(I.high, cur.high);
        if (h > 0) {
          cur.high = I.high;
          cur.high_closed = I.high_closed;
        } else if (h == 0) {
          cur.high_closed = cur.high_closed || I.high_closed;
        }
        continue;
      }
    }
    out.intervals.push_back(std::move(I));
  }
  return out;
}

IntervalSet TimeOrder::unite(const IntervalSet& a, const IntervalSet& b) const {
  std::vector<SymbolicInterval> all = a.intervals;
  all.insert(all.end(), b.intervals.begin(), b.intervals.end());
  return normalize(std::move(all));
}

IntervalSet TimeOrder::intersect(const IntervalSet& a, const IntervalSet& b) const {
  std::vector<SymbolicInterval> all;
  for (const auto& x : a.intervals)
    for (const auto& y : b.intervals) all.push_back(intersect(x, y));
  return normalize(std::move(all));
}

Rational TimeOrder::rational_between(const SymbolicTime& a, const SymbolicTime& b) const {
  if (cmp(a, b) >= 0) throw PreconditionViolation("rational_between needs a < b");
  Rational w = 1;
  for (int i = 0; i < 4 * opt_.budget; ++i, w /= 4) {
    const Rational ahi = a.bounds(w).second, blo = b.bounds(w).first;
    if (ahi < blo) return simplest_between(ahi, blo);
  }
  throw UndecidedEquality("could not separate " + a.to_string() + " from " + b.to_string());
}

SymbolicTime TimeOrder::pick(const SymbolicInterval& I) const {
  if (I.low_closed) return I.low;
  int c = cmp(I.low, I.high);
  if (c == 0) return I.high;
  return SymbolicTime(rational_between(I.low, I.high));
}

SymbolicInterval minkowski(const SymbolicInterval& I, const TimeWindow& T) {
  return {I.low + T.low, I.high + T.high, I.low_closed && T.low_closed, I.high_closed && T.high_closed};
}

SymbolicInterval shift(const SymbolicInterval& I, const Rational& g) {
  return {I.low + g, I.high + g, I.low_closed, I.high_closed};
}

SymbolicInterval to_symbolic(const TimeWindow& T) {
  return {SymbolicTime(T.low), SymbolicTime(T.high), T.low_closed, T.high_closed};
}

}  // namespace cll::checker
