#include "cll/cli/commands.hpp"

#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>

#include <json.hpp>

#include "cll/checker/checker.hpp"
#include "cll/checker/oracle.hpp"
#include "cll/cli/io.hpp"
#include "cll/cli/records.hpp"
#include "cll/pef/squarefree.hpp"

namespace cll::cli {

using json = nlohmann::json;
using checker::SymbolicInterval;
using ctmc::format_rational;
using pef::SymbolicTime;

namespace {

checker::CheckOptions options(const RunConfig& cfg) {
  if (sgn(cfg.epsilon) <= 0) throw PreconditionViolation("epsilon must be positive");
  if (sgn(cfg.delta) <= 0) throw PreconditionViolation("delta must be positive");
  if (cfg.budget < 1) throw PreconditionViolation("budget must be at least 1");
  checker::CheckOptions opt;
  opt.isolation.delta = cfg.delta;
  opt.compare.delta = cfg.delta;
  opt.compare.budget = cfg.budget;
  return opt;
}

std::string formula_text(const RunConfig& cfg) {
  std::error_code ec;
  if (!cfg.formula.empty() && std::filesystem::is_regular_file(cfg.formula, ec)) return read_file(cfg.formula);
  return cfg.formula;
}

logic::PathPtr formula(const RunConfig& cfg) {
  std::string text = formula_text(cfg);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw PreconditionViolation("no formula given");
  return logic::parse(text);
}

Rational horizon_of(const RunConfig& cfg) {
  if (cfg.horizon) {
    if (sgn(*cfg.horizon) <= 0) throw PreconditionViolation("horizon must be positive");
    return *cfg.horizon;
  }
  if (!cfg.formula.empty()) {
    // longest until chain in the formula
    Rational h = 0;
    std::function<void(const logic::PathNF&)> walk = [&](const logic::PathNF& n) {
      if (n.leaf) h = std::max(h, checker::horizon(n.leaf));
      for (const auto& c : n.children) walk(c);
    };
    walk(logic::normalize_path(formula(cfg)));
    if (sgn(h) > 0) return h;
  }
  throw PreconditionViolation("no horizon: pass --horizon or a formula with a positive time bound");
}

void report_error(const RunConfig& cfg, std::ostream& out, std::ostream& err, const char* kind,
                  const std::string& msg, const std::vector<ctmc::Diagnostic>& diags = {}) {
  if (cfg.format == Format::Structured) {
    json d = json::array();
    for (const auto& x : diags) d.push_back({{"where", x.where}, {"message", x.message}});
    out << json{{"error", kind}, {"message", msg}, {"diagnostics", d}}.dump() << "\n";
  } else {
    err << kind << ": " << msg << "\n";
  }
}

int guarded(const RunConfig& cfg, std::ostream& out, std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ModelError& e) {
    report_error(cfg, out, err, "model error", e.what(), e.diagnostics);
    return kInvalid;
  } catch (const logic::SyntaxError& e) {
    report_error(cfg, out, err, "parse error", e.what());
    return kInvalid;
  } catch (const UndecidedEquality& e) {
    report_error(cfg, out, err, "undecided", e.what());
    return kUndecided;
  } catch (const PreconditionViolation& e) {
    report_error(cfg, out, err, "invalid input", e.what());
    return kInvalid;
  } catch (const DegenerateInput& e) {
    report_error(cfg, out, err, "invalid input", e.what());
    return kInvalid;
  } catch (const std::exception& e) {
    report_error(cfg, out, err, "internal error", e.what());
    return kInternal;
  }
}

json interval_json(const pef::IsolatingInterval& iv) {
  json j{{"low", format_rational(iv.low)}, {"high", format_rational(iv.high)}};
  if (iv.exact) j["exact"] = format_rational(*iv.exact);
  return j;
}

}  // namespace

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    const Model m = load_model(cfg.model_path);
    const auto phi = formula(cfg);
    const auto verdict = checker::model_check(m.model, m.initial, phi, options(cfg));
    const VerdictRecord rec = summarize(verdict, cfg.epsilon);
    if (cfg.format == Format::Structured) {
      out << print_structured(rec);
      if (cfg.verbose)
        for (const auto& leaf : verdict.leaves) {
          json levels = json::array(), reach = json::array();
          for (const auto& s : leaf.levels) levels.push_back(s.to_string());
          for (const auto& s : leaf.reachable) reach.push_back(s.to_string());
          out << json{{"chain", {{"leaf", logic::to_string(leaf.leaf)}, {"levels", levels}, {"reachable", reach}}}}
                     .dump()
              << "\n";
        }
    } else {
      out << print_human(rec);
      if (cfg.verbose)
        for (const auto& leaf : verdict.leaves) {
          out << "chain " << logic::to_string(leaf.leaf) << (leaf.holds ? ": holds" : ": fails") << "\n";
          for (std::size_t k = 0; k < leaf.levels.size(); ++k) {
            out << "  Phi_" << k << " on " << leaf.levels[k].to_string() << "\n";
            if (k < leaf.reachable.size()) out << "  S_" << k << " = " << leaf.reachable[k].to_string() << "\n";
          }
        }
    }
    return kOk;
  });
}

int cmd_isolate(const RunConfig& cfg, const IsolateTarget& target, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    pef::Pef f;
    std::string what;
    if (target.state) {
      const Model m = load_model(cfg.model_path);
      const int i = *target.state;
      if (i < 1 || static_cast<std::size_t>(i) > m.model.chain.size())
        throw PreconditionViolation("state " + std::to_string(i) + " is not in the model");
      ctmc::Trajectory traj(m.model.chain, m.initial);
      f = traj.coord(i).pef() - pef::Pef::constant(algebra::FieldElem(target.level));
      what = "P[" + std::to_string(i) + "](t) - " + format_rational(target.level);
    } else {
      if (target.pef.empty()) throw PreconditionViolation("give --state or --pef");
      f = parse_pef(target.pef);
      what = f.to_string();
    }
    const Rational lo = target.low;
    const Rational hi = target.high ? *target.high : horizon_of(cfg);
    if (lo >= hi) throw PreconditionViolation("empty window");
    if (f.is_zero()) throw DegenerateInput("the function is identically zero");
    const pef::RealPef real(f);
    const pef::RealPef s(pef::square_free_part(real.pef()));
    const auto opt = options(cfg);
    pef::IsolationTrace trace;
    auto ivs = pef::isolate_square_free(s, lo, hi, opt.isolation, cfg.verbose ? &trace : nullptr);
    for (auto& iv : ivs) iv = pef::refine_square_free(s, iv, cfg.epsilon);

    if (cfg.format == Format::Structured) {
      json list = json::array();
      for (const auto& iv : ivs) list.push_back(interval_json(iv));
      out << json{{"function", what}, {"window", {format_rational(lo), format_rational(hi)}}}.dump() << "\n";
      out << json{{"intervals", list}}.dump() << "\n";
      if (cfg.verbose) out << json{{"trace", trace.lines}}.dump() << "\n";
    } else {
      out << "roots of " << what << " in (" << format_rational(lo) << ", " << format_rational(hi)
          << "): " << ivs.size() << "\n";
      for (const auto& iv : ivs) {
        out << "  " << iv.to_string() << "  ~" << std::setprecision(12) << Rational((iv.low + iv.high) / 2).get_d() << "\n";
      }
      if (cfg.verbose)
        for (const auto& line : trace.lines) out << "  | " << line << "\n";
    }
    return kOk;
  });
}

int cmd_trace(const RunConfig& cfg, const std::optional<Rational>& step, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    const Model m = load_model(cfg.model_path);
    const Rational H = horizon_of(cfg);
    checker::Checker ck(m.model.chain, m.initial, options(cfg));
    const auto& ord = ck.order();
    const std::size_t d = m.model.chain.size();

    std::set<Rational> levels;
    for (const auto& I : m.model.intervals) {
      levels.insert(I.low);
      levels.insert(I.high);
    }
    std::vector<SymbolicTime> cuts;
    for (std::size_t i = 1; i <= d; ++i)
      for (const auto& c : levels)
        for (const auto& t : ck.crossings(static_cast<int>(i), c, H)) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end(), [&](const SymbolicTime& a, const SymbolicTime& b) { return ord.cmp(a, b) < 0; });
    std::vector<SymbolicTime> points{SymbolicTime(Rational(0))};
    for (const auto& t : cuts)
      if (ord.cmp(points.back(), t) != 0) points.push_back(t);
    if (ord.cmp(points.back(), SymbolicTime(H)) != 0) points.push_back(SymbolicTime(H));

    std::vector<ctmc::Atom> atoms;
    for (std::size_t i = 1; i <= d; ++i)
      for (const auto& I : m.model.intervals) atoms.push_back({static_cast<int>(i), I});
    auto atoms_at = [&](const SymbolicTime& t) {
      std::vector<std::string> on;
      for (const auto& a : atoms)
        if (ck.holds_at(logic::State::make_atom(a), t)) on.push_back(a.to_string());
      return on;
    };

    // elementary pieces {p0}, (p0,p1), {p1}, ..., merged while the atom set is unchanged
    struct Segment {
      SymbolicInterval span;
      std::vector<std::string> atoms;
    };
    std::vector<Segment> segs;
    auto push = [&](SymbolicInterval piece, std::vector<std::string> on) {
      if (!segs.empty() && segs.back().atoms == on) {
        segs.back().span.high = piece.high;
        segs.back().span.high_closed = piece.high_closed;
      } else {
        segs.push_back({std::move(piece), std::move(on)});
      }
    };
    for (std::size_t k = 0; k < points.size(); ++k) {
      push(SymbolicInterval::point(points[k]), atoms_at(points[k]));
      if (k + 1 < points.size())
        push({points[k], points[k + 1], false, false},
             atoms_at(SymbolicTime(ord.rational_between(points[k], points[k + 1]))));
    }

    std::map<std::string, std::string> table;
    PefNames names(table);
    const Rational dt = step ? *step : H / 100;
    std::vector<std::pair<Rational, std::vector<Rational>>> samples;
    if (sgn(dt) > 0)
      for (Rational t = 0; t <= H; t += dt)
        samples.emplace_back(t, ctmc::numeric_distribution(m.model.chain, m.initial, t, Rational(1, 1000000000000)));

    if (cfg.format == Format::Structured) {
      for (const auto& s : segs) {
        TimeRecord lo = record_time(s.span.low, cfg.epsilon, names), hi = record_time(s.span.high, cfg.epsilon, names);
        out << json{{"segment",
                     {{"low", to_string(lo)}, {"high", to_string(hi)}, {"low_closed", s.span.low_closed},
                      {"high_closed", s.span.high_closed}, {"atoms", s.atoms}}}}
                   .dump()
            << "\n";
      }
      out << json{{"pefs", table}}.dump() << "\n";
      for (const auto& [t, mu] : samples) {
        json row = json::array();
        for (const auto& x : mu) row.push_back(x.get_d());
        out << json{{"sample", {{"t", t.get_d()}, {"mu", row}}}}.dump() << "\n";
      }
    } else {
      out << segs.size() << " segment(s) on [0, " << format_rational(H) << "]\n";
      for (const auto& s : segs) {
        TimeRecord lo = record_time(s.span.low, cfg.epsilon, names), hi = record_time(s.span.high, cfg.epsilon, names);
        out << "  " << (s.span.low_closed ? "[" : "(") << std::setprecision(10) << approx(lo) << ", " << approx(hi)
            << (s.span.high_closed ? "]" : ")") << "  {";
        for (std::size_t k = 0; k < s.atoms.size(); ++k) out << (k ? ", " : "") << s.atoms[k];
        out << "}\n";
      }
      if (cfg.verbose)
        for (const auto& [id, text] : table) out << id << "(t) = " << text << "\n";
      if (!samples.empty()) {
        out << "t";
        for (std::size_t i = 0; i < d; ++i) out << " " << m.model.chain.states[i];
        out << "\n";
        for (const auto& [t, mu] : samples) {
          out << std::setprecision(8) << t.get_d();
          for (const auto& x : mu) out << " " << std::setprecision(10) << x.get_d();
          out << "\n";
        }
      }
    }
    return kOk;
  });
}

int cmd_simulate(const RunConfig& cfg, const Rational& step, double threshold, std::ostream& out,
                 std::ostream& err) {
  return guarded(cfg, out, err, [&] {
    if (sgn(step) <= 0) throw PreconditionViolation("grid step must be positive");
    const Model m = load_model(cfg.model_path);
    const auto phi = formula(cfg);
    const auto exact = checker::model_check(m.model, m.initial, phi, options(cfg));
    const auto oracle = checker::grid_check(m.model.chain, m.initial, phi, step);
    const bool agree = exact.satisfied == oracle.satisfied;
    const bool inconclusive = oracle.margin <= threshold;
    if (cfg.format == Format::Structured) {
      out << json{{"verdict", exact.satisfied ? "SAT" : "UNSAT"},
                  {"oracle", oracle.satisfied ? "SAT" : "UNSAT"},
                  {"agreement", agree},
                  {"inconclusive", inconclusive},
                  {"grid_points", oracle.grid_points},
                  {"margins", {{{"margin", oracle.margin}, {"nearest", oracle.nearest}}}}}
                 .dump()
          << "\n";
    } else {
      out << "exact  " << (exact.satisfied ? "SAT" : "UNSAT") << "\n";
      out << "oracle " << (oracle.satisfied ? "SAT" : "UNSAT") << " (" << oracle.grid_points << " grid points, step "
          << format_rational(step) << ")\n";
      out << (agree ? "agreement" : "DISAGREEMENT") << ", margin " << std::setprecision(6) << oracle.margin;
      if (!oracle.nearest.empty()) out << " (" << oracle.nearest << ")";
      out << "\n";
      if (inconclusive) out << "inconclusive near boundary (margin <= " << threshold << ")\n";
    }
    return agree || inconclusive ? kOk : kDisagreement;
  });
}

}  // namespace cll::cli
