#include "cll/cli/records.hpp"

#include <sstream>

#include <json.hpp>

namespace cll::cli {

using json = nlohmann::json;
using ctmc::format_rational;

namespace {

json to_json(const TimeRecord& t) {
  if (t.rational) return {{"kind", "rational"}, {"value", format_rational(t.value)}};
  return {{"kind", "root"}, {"pef", t.pef}, {"low", format_rational(t.low)}, {"high", format_rational(t.high)},
          {"offset", format_rational(t.offset)}};
}

Rational rat(const json& j, const char* key) { return algebra::parse_rational(j.at(key).get<std::string>()); }

TimeRecord time_from(const json& j) {
  TimeRecord t;
  if (j.at("kind") == "rational") {
    t.value = rat(j, "value");
    return t;
  }
  t.rational = false;
  t.pef = j.at("pef").get<std::string>();
  t.low = rat(j, "low");
  t.high = rat(j, "high");
  t.offset = rat(j, "offset");
  return t;
}


}  // namespace

std::string PefNames::id(const pef::RealPef& f) {
  std::string text = f.describe();
  auto it = ids_.find(text);
  if (it != ids_.end()) return it->second;
  std::string name = "p" + std::to_string(ids_.size() + 1);
  ids_.emplace(text, name);
  table_[name] = text;
  return name;
}

TimeRecord record_time(const pef::SymbolicTime& t, const Rational& eps, PefNames& names) {
  TimeRecord r;
  if (auto q = t.exact()) {
    r.value = *q;
    return r;
  }
  r.rational = false;
  auto iv = t.root()->refine(eps);
  r.pef = names.id(t.root()->witness());
  r.low = iv.low;
  r.high = iv.high;
  r.offset = t.offset();
  return r;
}

VerdictRecord summarize(const checker::Verdict& v, const Rational& eps) {
  VerdictRecord out;
  out.satisfied = v.satisfied;
  out.diagnostics = v.diagnostics;
  PefNames names(out.pefs);
  for (const auto& leaf : v.leaves) {
    if (!leaf.holds || !leaf.witness) continue;
    WitnessRecord w;
    w.leaf = logic::to_string(leaf.leaf);
    for (const auto& t : leaf.witness->times) w.times.push_back(record_time(t, eps, names));
    for (const auto& s : leaf.witness->stretches)
      w.stretches.push_back({record_time(s.low, eps, names), record_time(s.high, eps, names), s.low_closed, s.high_closed});
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

double approx(const TimeRecord& t) {
  if (t.rational) return t.value.get_d();
  return Rational((t.low + t.high) / 2 + t.offset).get_d();
}

std::string to_string(const TimeRecord& t) {
  if (t.rational) return format_rational(t.value);
  std::string s = "root of " + t.pef + " in (" + format_rational(t.low) + "," + format_rational(t.high) + ")";
  if (sgn(t.offset) != 0) s += " + " + format_rational(t.offset);
  return s;
}

std::string print_structured(const VerdictRecord& v) {
  std::ostringstream os;
  os << json{{"verdict", v.satisfied ? "SAT" : "UNSAT"}}.dump() << "\n";
  for (const auto& w : v.witnesses) {
    json times = json::array(), stretches = json::array();
    for (const auto& t : w.times) times.push_back(to_json(t));
    for (const auto& s : w.stretches)
      stretches.push_back({{"low", to_json(s.low)}, {"high", to_json(s.high)}, {"low_closed", s.low_closed},
                           {"high_closed", s.high_closed}});
    os << json{{"witness", {{"leaf", w.leaf}, {"times", times}, {"stretches", stretches}}}}.dump() << "\n";
  }
  json pefs = json::object();
  for (const auto& [id, text] : v.pefs) pefs[id] = text;
  os << json{{"pefs", pefs}}.dump() << "\n";
  os << json{{"diagnostics", v.diagnostics}}.dump() << "\n";
  return os.str();
}

VerdictRecord parse_structured(const std::string& text) {
  VerdictRecord v;
  std::istringstream in(text);
  std::string line;
  bool seen = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(std::string("bad verdict record: ") + e.what());
    }
    if (j.contains("verdict")) {
      v.satisfied = j["verdict"] == "SAT";
      seen = true;
    } else if (j.contains("witness")) {
      const json& w = j["witness"];
      WitnessRecord r;
      r.leaf = w.at("leaf").get<std::string>();
      for (const auto& t : w.at("times")) r.times.push_back(time_from(t));
      for (const auto& s : w.at("stretches"))
        r.stretches.push_back({time_from(s.at("low")), time_from(s.at("high")), s.at("low_closed").get<bool>(),
                               s.at("high_closed").get<bool>()});
      v.witnesses.push_back(std::move(r));
    } else if (j.contains("pefs")) {
      for (const auto& [id, text] : j["pefs"].items()) v.pefs[id] = text.get<std::string>();
    } else if (j.contains("diagnostics")) {
      v.diagnostics = j["diagnostics"].get<std::vector<std::string>>();
    }
  }
  if (!seen) throw Error("no verdict record");
  return v;
}

std::string print_human(const VerdictRecord& v) {
  std::ostringstream os;
  os << (v.satisfied ? "SAT" : "UNSAT") << "\n";
  for (const auto& w : v.witnesses) {
    os << "run for " << w.leaf << "\n";
    for (std::size_t k = 0; k < w.times.size(); ++k)
      os << "  s" << k << " = " << to_string(w.times[k]) << "  (~" << approx(w.times[k]) << ")\n";
    for (std::size_t k = 0; k < w.stretches.size(); ++k) {
      const auto& s = w.stretches[k];
      os << "  I" << k + 1 << " = " << (s.low_closed ? "[" : "(") << approx(s.low) << ", " << approx(s.high)
         << (s.high_closed ? "]" : ")") << "\n";
    }
  }
  for (const auto& [id, text] : v.pefs) os << id << "(t) = " << text << "\n";
  for (const auto& d : v.diagnostics) os << "note: " << d << "\n";
  return os.str();
}

}  // namespace cll::cli
