#include "cll/pef/exist.hpp"

#include <sstream>

namespace cll::pef {

std::string ExistTrace::to_string() const {
  std::ostringstream os;
  for (const auto& s : steps) {
    os << "delta=" << algebra::to_string(s.delta) << " M=" << algebra::to_double(s.lipschitz) << " N=" << s.samples << " -> ";
    switch (s.outcome) {
      case ExistOutcome::no_root: os << "false"; break;
      case ExistOutcome::root: os << "true"; break;
      case ExistOutcome::refine: os << "recurse"; break;
    }
    os << "\n";
  }
  return os.str();
}

bool exist_root(const RealFunction& f, const Rational& a, const Rational& b, const Rational& delta0,
                ExistTrace* trace, int max_halvings) {
  if (!(a < b)) throw PreconditionViolation("exist_root needs a < b");
  if (sgn(delta0) <= 0) throw PreconditionViolation("exist_root needs delta > 0");
  if (f.sign_at(a) == 0 || f.sign_at(b) == 0)
    throw PreconditionViolation("exist_root: f vanishes at an endpoint");
  const Rational M = f.lipschitz(a, b);
  Rational delta = delta0;
  for (int round = 0; round <= max_halvings; ++round, delta /= 2) {
    Integer n = algebra::ceil(4 * (b - a) * M / delta);
    if (n < 1) n = 1;
    if (!n.fits_slong_p()) throw Error("exist_root: sample count overflow");
    const long N = n.get_si();
    const long bits = 3 - algebra::ilog2(delta);  // |q_j - f(s_j)| < delta/4
    const Rational half = delta / 2;
    bool all_neg = true, all_pos = true, some_neg = false, some_pos = false;
    for (long j = 0; j <= N; ++j) {
      Rational s = a + (b - a) * Rational(j) / Rational(N);
      Rational q = f.eval(s, bits).mid().re;
      bool hi_neg = q + half < 0, lo_pos = q - half > 0;
      all_neg = all_neg && hi_neg;
      all_pos = all_pos && lo_pos;
      some_neg = some_neg || hi_neg;
      some_pos = some_pos || lo_pos;
      if (some_neg && some_pos) break;
    }
    ExistStep step{delta, M, N, ExistOutcome::refine};
    bool done = true, result = false;
    if (all_neg || all_pos) {
      step.outcome = ExistOutcome::no_root;
    } else if (some_neg && some_pos) {
      step.outcome = ExistOutcome::root;
      result = true;
    } else {
      done = false;
    }
    if (trace) trace->steps.push_back(step);
    if (done) return result;
  }
  throw Error("exist_root: envelope did not resolve after " + std::to_string(max_halvings) + " halvings of delta");
}

}  // namespace cll::pef
