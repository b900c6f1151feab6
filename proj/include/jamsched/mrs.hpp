#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "jamsched/energy.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/ilp.hpp"
#include "jamsched/schedule.hpp"
#include "jamsched/sinr.hpp"
#include "jamsched/world.hpp"

namespace jamsched {

// All inclusion-minimal reliable subsets of the deployment, as sorted id sets
// in lexicographic order. `truncated` flags an enumeration stopped early by a
// size cap, in which case the family is some subset of the full one.
struct MinimumReliableSet {
  std::vector<std::vector<int>> solutions;
  bool truncated = false;
};

// Exhaustive enumeration over subsets, pruned by the cardinality bounds and by
// supersets of already-found minimal sets. A set is minimal iff it is reliable
// and every one-jammer deletion breaks it; interference is monotone in the
// active set, so no deeper subset check is needed. Costs up to 2^n constraint
// evaluations: beyond 20 jammers callers must opt in with a size cap.
inline MinimumReliableSet enumerate_minimum_reliable_sets(const WorldModel& world,
                                                          const NetworkConfig& cfg,
                                                          std::size_t size_cap = 0) {
  cfg.validate();
  const std::size_t n = world.jammers.size();
  if (n == 0) throw ParameterError("enumerate_minimum_reliable_sets: no jammers deployed");
  if (n > 20 && size_cap == 0)
    throw ResourceError("enumerate_minimum_reliable_sets: " + std::to_string(n) +
                        " jammers need a size cap (subset space is 2^n)");
  if (n > 64)
    throw ResourceError("enumerate_minimum_reliable_sets: more than 64 jammers is out of reach");

  ReliabilityEvaluator eval(world, cfg);
  ActiveCountBounds bounds = active_count_bounds(world, cfg);

  MinimumReliableSet out;
  std::vector<std::uint64_t> found_masks;

  std::vector<std::size_t> pick;
  std::vector<std::size_t> scratch;
  auto candidate_minimal = [&](std::uint64_t mask) {
    for (std::uint64_t fm : found_masks)
      if ((mask & fm) == fm) return false;  // superset of a known minimal set
    if (!eval.evaluate_indices(pick).reliable) return false;
    for (std::size_t drop = 0; drop < pick.size(); ++drop) {
      scratch = pick;
      scratch.erase(scratch.begin() + static_cast<std::ptrdiff_t>(drop));
      if (eval.evaluate_indices(scratch).reliable) return false;
    }
    return true;
  };

  long long lo = std::max(bounds.lower, 1LL);
  for (long long k = lo; k <= bounds.upper; ++k) {
    // Classic lexicographic k-combinations over jammer indices.
    pick.assign(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    while (true) {
      std::uint64_t mask = 0;
      for (std::size_t i : pick) mask |= 1ull << i;
      if (candidate_minimal(mask)) {
        std::vector<int> ids;
        ids.reserve(pick.size());
        for (std::size_t i : pick) ids.push_back(world.jammers[i].id);
        std::sort(ids.begin(), ids.end());
        out.solutions.push_back(std::move(ids));
        found_masks.push_back(mask);
        if (size_cap > 0 && out.solutions.size() >= size_cap) {
          out.truncated = true;
          std::sort(out.solutions.begin(), out.solutions.end());
          return out;
        }
      }
      // advance the combination
      std::size_t i = pick.size();
      while (i > 0 && pick[i - 1] == n - pick.size() + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::sort(out.solutions.begin(), out.solutions.end());
  return out;
}

// Rotation-count program over a family of reliable sets: maximize the total
// number of slots sum_k n_k subject to each jammer i being used at most w_i
// times, where w_i = lifespans[id]. Jammers in no set get no constraint.
inline Model build_lifespan_ilp(const MinimumReliableSet& family,
                                const std::vector<long long>& lifespans) {
  if (family.solutions.empty())
    throw ModelError("build_lifespan_ilp: the family has no reliable sets");

  long long max_w = 0;
  for (const auto& sol : family.solutions)
    for (int id : sol) {
      if (id < 0 || static_cast<std::size_t>(id) >= lifespans.size())
        throw ParameterError("build_lifespan_ilp: no lifespan for jammer id " + std::to_string(id));
      if (lifespans[static_cast<std::size_t>(id)] < 0)
        throw ParameterError("build_lifespan_ilp: negative lifespan for jammer id " + std::to_string(id));
      max_w = std::max(max_w, lifespans[static_cast<std::size_t>(id)]);
    }

  Model m;
  m.sense = Sense::Maximize;
  for (std::size_t k = 0; k < family.solutions.size(); ++k) {
    int v = m.add_variable("n" + std::to_string(k + 1), 0, static_cast<double>(max_w), true);
    m.set_objective(v, 1);
  }
  // One budget row per jammer that appears anywhere, in id order.
  std::vector<int> involved;
  for (const auto& sol : family.solutions) involved.insert(involved.end(), sol.begin(), sol.end());
  std::sort(involved.begin(), involved.end());
  involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
  for (int id : involved) {
    std::vector<LinearTerm> terms;
    for (std::size_t k = 0; k < family.solutions.size(); ++k) {
      const auto& sol = family.solutions[k];
      if (std::binary_search(sol.begin(), sol.end(), id)) terms.push_back({static_cast<int>(k), 1.0});
    }
    m.add_constraint("j" + std::to_string(id), std::move(terms), Relation::LessEqual,
                     static_cast<double>(lifespans[static_cast<std::size_t>(id)]));
  }
  return m;
}

struct MrsOptions {
  std::size_t size_cap = 0;  // 0 = enumerate everything (needs <= 20 jammers)
  SolveOptions solver;
};

// A schedule plus the artifacts it came from: how often each minimal reliable
// set gets rotated in.
struct MrsResult {
  MinimumReliableSet family;
  std::vector<long long> multiplicities;  // aligned with family.solutions
  Schedule schedule;
};

// Whole-deployment scheduler: enumerate the minimal reliable sets, pick
// per-set rotation counts with the budget program, then play the rotations
// back to back. Rechargeable batteries would invalidate the static budget
// view (idle slots refill them), so this routine is for unrechargeable
// deployments only.
inline MrsResult mrs_schedule(const WorldModel& world, const NetworkConfig& cfg,
                              const MrsOptions& opts = {}) {
  cfg.validate();
  for (const Jammer& j : world.jammers)
    if (j.kind == JammerKind::Rechargeable)
      throw UnsupportedModeError("mrs_schedule: jammer " + std::to_string(j.id) +
                                 " is rechargeable; use the per-slot scheduler");

  MrsResult res;
  res.schedule.termination = Termination::Dead;
  res.schedule.final_batteries.reserve(world.jammers.size());
  for (const Jammer& j : world.jammers) res.schedule.final_batteries.push_back(j.battery);

  res.family = enumerate_minimum_reliable_sets(world, cfg, opts.size_cap);
  if (res.family.solutions.empty()) return res;  // nothing can jam: lifetime 0

  int max_id = 0;
  for (const Jammer& j : world.jammers) max_id = std::max(max_id, j.id);
  std::vector<long long> lifespans(static_cast<std::size_t>(max_id) + 1, 0);
  for (const Jammer& j : world.jammers)
    lifespans[static_cast<std::size_t>(j.id)] = j.life_span(cfg);

  Model ilp = build_lifespan_ilp(res.family, lifespans);
  Solution sol = solve_ilp(ilp, opts.solver);
  if (sol.status != SolveStatus::Optimal)
    throw ModelError("mrs_schedule: rotation program did not solve");  // n_k = 0 is always feasible

  res.multiplicities.reserve(res.family.solutions.size());
  for (double v : sol.values) res.multiplicities.push_back(std::llround(v));

  for (std::size_t k = 0; k < res.family.solutions.size(); ++k)
    for (long long r = 0; r < res.multiplicities[k]; ++r)
      res.schedule.slots.push_back(res.family.solutions[k]);

  // Replay the expansion to prove it out and to land the final batteries.
  std::vector<Jammer> jammers = world.jammers;
  ReliabilityEvaluator eval(world, cfg);
  for (const auto& slot : res.schedule.slots) {
    if (!eval.evaluate_indices(eval.indices_for_ids(slot)).reliable)
      throw ModelError("mrs_schedule: replay produced an unreliable slot");
    res.schedule.deltas.push_back(energy_delta(slot, classify(jammers, cfg), cfg));
    apply_slot(jammers, slot, cfg);
  }
  for (std::size_t i = 0; i < jammers.size(); ++i)
    res.schedule.final_batteries[i] = jammers[i].battery;
  res.schedule.termination = res.family.truncated ? Termination::SlotCapReached : Termination::Dead;
  return res;
}

}  // namespace jamsched
