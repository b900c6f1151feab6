#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "jamsched/config.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/greedy.hpp"
#include "jamsched/lifetime.hpp"
#include "jamsched/mrs.hpp"
#include "jamsched/sinr.hpp"
#include "jamsched/world.hpp"

namespace jamsched {

// Which knob a sweep varies. Everything else stays at the spec's fixed values.
enum class SweepVariable {
  JammerCount,          // fleet size n
  JammerPower,          // per-jammer transmit power p_j
  BatteryLifespans,     // initial charge in whole activations (battery = value * c)
  FenceThreshold,       // eavesdropper tolerance delta2
  RechargeableFraction, // share of the fleet deployed rechargeable
  RechargeTime,         // slots a rechargeable jammer needs to refill one activation
};

enum class Algorithm { Greedy, Mrs, Baseline };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Mrs: return "mrs";
    default: return "baseline";
  }
}

inline const char* variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::JammerCount: return "n";
    case SweepVariable::JammerPower: return "p_j";
    case SweepVariable::BatteryLifespans: return "lifespans";
    case SweepVariable::FenceThreshold: return "delta2";
    case SweepVariable::RechargeableFraction: return "eta";
    default: return "c";
  }
}

// One sweep: a grid of values for a single variable, several seeds per value,
// one scheduling algorithm. Defaults describe the desk-sized arena; the
// shipped config files override them for the full-size setup.
struct ExperimentSpec {
  Rect storage{15, 15, 25, 25};
  Rect fence{0, 0, 40, 40};
  NetworkConfig network;  // fixed radio/energy parameters; the sweep may override one

  // Fleet built at every sweep point unless the variable overrides a field.
  int jammer_count = 20;
  int lifespans = 10;  // battery = capacity = lifespans * c
  double rechargeable_fraction = 0;

  SweepVariable variable = SweepVariable::JammerCount;
  std::vector<double> values;
  int seeds = 5;  // seeds 1..seeds run at every value
  Algorithm algorithm = Algorithm::Greedy;
  long long max_slots = 1000;

  // The published study varied each knob over a fixed window (n: 30-120,
  // p_j: 0.1-20, lifespans: 1-10, delta2: 0.1-0.9, eta: 0-0.8, c: 4-20).
  // Values outside that window are refused unless the spec opts in here, so
  // an off-grid sweep is always a deliberate choice.
  bool extended = false;

  void validate() const {
    network.validate();
    if (!(storage.min_x < storage.max_x) || !(storage.min_y < storage.max_y) ||
        !(fence.min_x < fence.max_x) || !(fence.min_y < fence.max_y))
      throw ParameterError("ExperimentSpec: degenerate rectangle");
    if (jammer_count < 1) throw ParameterError("ExperimentSpec: jammer_count must be positive");
    if (lifespans < 1) throw ParameterError("ExperimentSpec: lifespans must be positive");
    if (rechargeable_fraction < 0 || rechargeable_fraction > 1)
      throw ParameterError("ExperimentSpec: rechargeable_fraction must lie in [0,1]");
    if (values.empty()) throw ParameterError("ExperimentSpec: no sweep values");
    if (seeds < 1) throw ParameterError("ExperimentSpec: seeds must be at least 1");
    if (max_slots < 1) throw ParameterError("ExperimentSpec: max_slots must be at least 1");

    const bool integral = variable == SweepVariable::JammerCount ||
                          variable == SweepVariable::BatteryLifespans ||
                          variable == SweepVariable::RechargeTime;
    double lo = 0, hi = 0;
    switch (variable) {
      case SweepVariable::JammerCount: lo = 30; hi = 120; break;
      case SweepVariable::JammerPower: lo = 0.1; hi = 20; break;
      case SweepVariable::BatteryLifespans: lo = 1; hi = 10; break;
      case SweepVariable::FenceThreshold: lo = 0.1; hi = 0.9; break;
      case SweepVariable::RechargeableFraction: lo = 0; hi = 0.8; break;
      case SweepVariable::RechargeTime: lo = 4; hi = 20; break;
    }
    for (double v : values) {
      if (integral && v != std::floor(v))
        throw ParameterError(std::string("ExperimentSpec: ") + variable_name(variable) +
                             " takes whole-number values");
      if (integral ? v < 1 : !(v > 0)) {
        if (variable != SweepVariable::RechargeableFraction || v < 0)
          throw ParameterError(std::string("ExperimentSpec: ") + variable_name(variable) +
                               " value out of domain");
      }
      if (!extended && (v < lo || v > hi))
        throw ParameterError(std::string("ExperimentSpec: ") + variable_name(variable) +
                             " value outside the studied range [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]; set extended to run it anyway");
    }
    if (variable == SweepVariable::RechargeableFraction)
      for (double v : values)
        if (v > 1) throw ParameterError("ExperimentSpec: eta cannot exceed 1");

    if (algorithm == Algorithm::Mrs) {
      int max_n = jammer_count;
      if (variable == SweepVariable::JammerCount)
        for (double v : values) max_n = std::max(max_n, static_cast<int>(v));
      if (max_n > 20)
        throw ParameterError(
            "ExperimentSpec: the mrs algorithm enumerates subsets and is limited to 20 "
            "jammers; use greedy for larger fleets");
      if (rechargeable_fraction > 0 || variable == SweepVariable::RechargeableFraction)
        throw ParameterError("ExperimentSpec: mrs does not handle rechargeable jammers");
    }
  }
};

// Outcome of one (value, seed, algorithm) run. wall_seconds is a measurement,
// not part of the result: it is deliberately absent from the CSV so repeated
// runs of the same spec serialize to identical bytes.
struct ExperimentRecord {
  double value = 0;
  int seed = 0;
  Algorithm algorithm = Algorithm::Greedy;
  long long lifetime = 0;
  Termination termination = Termination::Dead;
  long long baseline = 0;            // all-active policy on the same world
  bool feasible = false;             // whole fleet reliable before the first slot
  LifetimeVerdict verdict = LifetimeVerdict::FiniteNecessaryFail;
  long long l_jam = 0;               // fewest jammers any reliable set needs (0: none)
  long long bound_lower = 0;         // active-count window from the distance bounds
  long long bound_upper = 0;
  double wall_seconds = 0;
};

namespace detail {

// Canonical record order: sweep value, then seed, then algorithm. Emission
// sorts with this so the output bytes never depend on production order.
inline bool record_before(const ExperimentRecord& a, const ExperimentRecord& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.seed != b.seed) return a.seed < b.seed;
  return static_cast<int>(a.algorithm) < static_cast<int>(b.algorithm);
}

// %.9g: enough digits to round-trip every value the sweeps use, short for the
// common integers, and stable across runs.
inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace detail

// Runs every (value, seed) cell of the spec and returns one record per cell in
// canonical order. Infeasible points (fleet not reliable even with everyone
// active) are marked and kept: the algorithms still run, and a zero-lifetime
// record at the edge of a sweep is data, not an error.
inline std::vector<ExperimentRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const WorldModel arena = make_world(spec.storage, spec.fence, spec.network.lambda);

  // The un-swept configuration must protect both boundaries with the whole
  // fleet active; a spec whose resting point is already broken is a setup
  // mistake, not a data point. Sweep points that lose feasibility later are
  // only marked, because crossing that edge is exactly what a sweep probes.
  for (int seed = 1; seed <= spec.seeds; ++seed) {
    WorldModel world =
        deploy_jammers(arena, spec.jammer_count, static_cast<std::uint64_t>(seed), spec.network,
                       spec.lifespans * spec.network.c, spec.rechargeable_fraction);
    std::vector<int> everyone(world.jammers.size());
    for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = world.jammers[i].id;
    if (!is_reliable(everyone, world, spec.network).reliable)
      throw ConfigError("run_experiment: the default configuration is infeasible (seed " +
                        std::to_string(seed) + "): the full fleet does not protect both boundaries");
  }

  std::vector<ExperimentRecord> records;
  records.reserve(spec.values.size() * static_cast<std::size_t>(spec.seeds));
  for (double value : spec.values) {
    // Materialize the point: copy the fixed knobs, overwrite the swept one.
    NetworkConfig cfg = spec.network;
    int n = spec.jammer_count;
    int lifespans = spec.lifespans;
    double eta = spec.rechargeable_fraction;
    switch (spec.variable) {
      case SweepVariable::JammerCount: n = static_cast<int>(value); break;
      case SweepVariable::JammerPower: cfg.p_j = value; break;
      case SweepVariable::BatteryLifespans: lifespans = static_cast<int>(value); break;
      case SweepVariable::FenceThreshold: cfg.delta2 = value; break;
      case SweepVariable::RechargeableFraction: eta = value; break;
      case SweepVariable::RechargeTime: cfg.c = static_cast<int>(value); break;
    }

    for (int seed = 1; seed <= spec.seeds; ++seed) {
      const auto started = std::chrono::steady_clock::now();
      WorldModel world =
          deploy_jammers(arena, n, static_cast<std::uint64_t>(seed), cfg, lifespans * cfg.c, eta);

      ExperimentRecord rec;
      rec.value = value;
      rec.seed = seed;
      rec.algorithm = spec.algorithm;

      std::vector<int> everyone(world.jammers.size());
      for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = world.jammers[i].id;
      rec.feasible = is_reliable(everyone, world, cfg).reliable;

      rec.baseline = baseline_lifetime(world, cfg, spec.max_slots);
      switch (spec.algorithm) {
        case Algorithm::Greedy: {
          Schedule s = greedy_schedule(world, cfg, spec.max_slots);
          rec.lifetime = s.lifetime();
          rec.termination = s.termination;
          break;
        }
        case Algorithm::Mrs: {
          MrsResult r = mrs_schedule(world, cfg);
          rec.lifetime = r.schedule.lifetime();
          rec.termination = Termination::Dead;  // rotation plans always drain to the end
          break;
        }
        case Algorithm::Baseline:
          rec.lifetime = rec.baseline;
          rec.termination =
              rec.baseline == spec.max_slots ? Termination::SlotCapReached : Termination::Dead;
          break;
      }

      LifetimeCertificate cert = infinite_lifetime_certificate(world, cfg);
      rec.verdict = cert.verdict;
      rec.l_jam = cert.min_active;
      ActiveCountBounds bounds = active_count_bounds(world, cfg);
      rec.bound_lower = bounds.lower;
      rec.bound_upper = bounds.upper;

      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      records.push_back(std::move(rec));
    }
  }
  std::sort(records.begin(), records.end(), detail::record_before);
  return records;
}

// Serializes records as CSV: fixed header, one line per record, newline
// terminated, records in canonical order regardless of input order. Columns
// are documented in docs/csv_format.md; they and their order are frozen so
// downstream diffs stay meaningful.
inline std::string emit_csv(std::vector<ExperimentRecord> records) {
  std::sort(records.begin(), records.end(), detail::record_before);
  std::string out =
      "value,seed,algorithm,lifetime,termination,baseline,feasible,verdict,"
      "l_jam,bound_lower,bound_upper\n";
  for (const ExperimentRecord& r : records) {
    out += detail::format_value(r.value);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += algorithm_name(r.algorithm);
    out += ',';
    out += std::to_string(r.lifetime);
    out += ',';
    out += r.termination == Termination::SlotCapReached ? "slot_cap" : "dead";
    out += ',';
    out += std::to_string(r.baseline);
    out += ',';
    out += r.feasible ? '1' : '0';
    out += ',';
    switch (r.verdict) {
      case LifetimeVerdict::Infinite: out += "infinite"; break;
      case LifetimeVerdict::FiniteNecessaryFail: out += "finite_necessary_fail"; break;
      case LifetimeVerdict::FiniteNotFound: out += "finite_not_found"; break;
    }
    out += ',';
    out += std::to_string(r.l_jam);
    out += ',';
    out += std::to_string(r.bound_lower);
    out += ',';
    out += std::to_string(r.bound_upper);
    out += '\n';
  }
  return out;
}

}  // namespace jamsched
