#pragma once

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jamsched/errors.hpp"
#include "jamsched/experiment.hpp"

namespace jamsched {

// The configuration every key falls back to when a file omits it: the
// full-size arena and the fixed parameter values the published study used
// (n=100, p_j=1, lifespans=10, delta2=0.5, eta=0, c=10). p_t, gamma and
// delta1 were never stated there; the NetworkConfig defaults stand in.
inline ExperimentSpec paper_profile() {
  ExperimentSpec spec;
  spec.fence = Rect{0, 0, 100, 100};
  spec.storage = Rect{37.5, 37.5, 62.5, 62.5};
  spec.jammer_count = 100;
  return spec;
}

// Shrunk arena for interactive runs and the test suite: same shape, a quarter
// the span, fleet capped at 40 so exhaustive cross-checks stay tractable.
inline ExperimentSpec desk_profile() {
  return ExperimentSpec{};
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw ConfigError("config: " + where + ": expected a number, got \"" + text + "\"");
  return v;
}

inline int parse_int(const std::string& text, const std::string& where) {
  double v = parse_number(text, where);
  if (v != static_cast<long long>(v))
    throw ConfigError("config: " + where + ": expected a whole number, got \"" + text + "\"");
  return static_cast<int>(v);
}

inline bool parse_bool(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ConfigError("config: " + where + ": expected true or false, got \"" + text + "\"");
}

inline std::vector<double> parse_numbers(const std::string& text, const std::string& where) {
  std::istringstream in(text);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number(tok, where));
  if (out.empty()) throw ConfigError("config: " + where + ": expected at least one number");
  return out;
}

inline Rect parse_rect(const std::string& text, const std::string& where) {
  std::vector<double> v = parse_numbers(text, where);
  if (v.size() != 4)
    throw ConfigError("config: " + where + ": expected four numbers (min_x min_y max_x max_y)");
  return Rect{v[0], v[1], v[2], v[3]};
}

inline SweepVariable parse_variable(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t == "n") return SweepVariable::JammerCount;
  if (t == "p_j") return SweepVariable::JammerPower;
  if (t == "lifespans") return SweepVariable::BatteryLifespans;
  if (t == "delta2") return SweepVariable::FenceThreshold;
  if (t == "eta") return SweepVariable::RechargeableFraction;
  if (t == "c") return SweepVariable::RechargeTime;
  throw ConfigError("config: " + where + ": unknown variable \"" + t +
                    "\" (one of n, p_j, lifespans, delta2, eta, c)");
}

inline Algorithm parse_algorithm(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t == "greedy") return Algorithm::Greedy;
  if (t == "mrs") return Algorithm::Mrs;
  if (t == "baseline") return Algorithm::Baseline;
  throw ConfigError("config: " + where + ": unknown algorithm \"" + t +
                    "\" (one of greedy, mrs, baseline)");
}

}  // namespace detail

// Reads the sectioned key = value format and returns the spec it describes,
// starting from the full-size profile so a file only has to state what it
// changes. Sections are [geometry], [network], [jammers] and [sweep]; every
// key outside the known set is an error rather than a silent no-op, and so is
// stating the same key twice.
inline ExperimentSpec parse_experiment_config(const std::string& text) {
  using detail::parse_algorithm;
  using detail::parse_bool;
  using detail::parse_int;
  using detail::parse_number;
  using detail::parse_numbers;
  using detail::parse_rect;
  using detail::parse_variable;
  using detail::trim;

  ExperimentSpec spec = paper_profile();
  std::string section;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const std::string where = "line " + std::to_string(lineno);

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config: " + where + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "geometry" && section != "network" && section != "jammers" &&
          section != "sweep")
        throw ConfigError("config: " + where + ": unknown section [" + section + "]");
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: " + where + ": expected key = value");
    if (section.empty())
      throw ConfigError("config: " + where + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = line.substr(eq + 1);
    if (!seen.insert(section + "." + key).second)
      throw ConfigError("config: " + where + ": duplicate key " + key + " in [" + section + "]");
    const std::string ctx = where + " (" + section + "." + key + ")";

    if (section == "geometry") {
      if (key == "fence") spec.fence = parse_rect(value, ctx);
      else if (key == "storage") spec.storage = parse_rect(value, ctx);
      else if (key == "lambda") spec.network.lambda = parse_number(value, ctx);
      else throw ConfigError("config: " + ctx + ": unknown key");
    } else if (section == "network") {
      if (key == "p_t") spec.network.p_t = parse_number(value, ctx);
      else if (key == "p_j") spec.network.p_j = parse_number(value, ctx);
      else if (key == "gamma") spec.network.gamma = parse_number(value, ctx);
      else if (key == "delta1") spec.network.delta1 = parse_number(value, ctx);
      else if (key == "delta2") spec.network.delta2 = parse_number(value, ctx);
      else if (key == "c") spec.network.c = parse_int(value, ctx);
      else if (key == "epsilon") spec.network.epsilon = parse_number(value, ctx);
      else if (key == "tolerance") spec.network.tolerance = parse_number(value, ctx);
      else throw ConfigError("config: " + ctx + ": unknown key");
    } else if (section == "jammers") {
      if (key == "count") spec.jammer_count = parse_int(value, ctx);
      else if (key == "lifespans") spec.lifespans = parse_int(value, ctx);
      else if (key == "rechargeable_fraction")
        spec.rechargeable_fraction = parse_number(value, ctx);
      else throw ConfigError("config: " + ctx + ": unknown key");
    } else {  // [sweep]
      if (key == "variable") spec.variable = parse_variable(value, ctx);
      else if (key == "values") spec.values = parse_numbers(value, ctx);
      else if (key == "seeds") spec.seeds = parse_int(value, ctx);
      else if (key == "algorithm") spec.algorithm = parse_algorithm(value, ctx);
      else if (key == "max_slots") spec.max_slots = parse_int(value, ctx);
      else if (key == "extended") spec.extended = parse_bool(value, ctx);
      else throw ConfigError("config: " + ctx + ": unknown key");
    }
  }
  return spec;
}

inline ExperimentSpec load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

}  // namespace jamsched
