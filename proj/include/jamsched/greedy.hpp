#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jamsched/energy.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/ilp.hpp"
#include "jamsched/schedule.hpp"
#include "jamsched/sinr.hpp"
#include "jamsched/world.hpp"

namespace jamsched {

// One slot as a covering program over the currently alive jammers: pick the
// active set with the least net battery drain that still protects both
// boundaries. Activation costs c, except that an idle rechargeable jammer
// below capacity would have gained 1, so activating one of those forfeits the
// gain (c+1) and the forfeitable total shows up as a negative constant.
inline Model build_slot_ilp(const WorldModel& world, const Classification& cls,
                            const NetworkConfig& cfg) {
  cfg.validate();
  ReliabilityEvaluator eval(world, cfg);

  Model m;
  m.sense = Sense::Minimize;
  std::vector<std::size_t> alive_idx;  // jammer index per model variable
  long long normal_rechargeable = 0;
  for (std::size_t i = 0; i < world.jammers.size(); ++i) {
    const Jammer& j = world.jammers[i];
    if (std::find(cls.dead.begin(), cls.dead.end(), j.id) != cls.dead.end()) continue;
    bool gains_idle = j.kind == JammerKind::Rechargeable &&
                      std::find(cls.normal.begin(), cls.normal.end(), j.id) != cls.normal.end();
    int v = m.add_variable("x" + std::to_string(j.id), 0, 1, true);
    m.set_objective(v, gains_idle ? cfg.c + 1 : cfg.c);
    if (gains_idle) ++normal_rechargeable;
    alive_idx.push_back(i);
  }
  m.objective_constant = -static_cast<double>(normal_rechargeable);

  const auto& sp = world.storage_boundary.points;
  double count_upper = static_cast<double>(alive_idx.size());
  std::vector<double> sorted;
  for (std::size_t k = 0; k < sp.size(); ++k) {
    std::vector<LinearTerm> terms;
    sorted.clear();
    for (std::size_t v = 0; v < alive_idx.size(); ++v) {
      double a = eval.storage_contribution(alive_idx[v], k);
      terms.push_back({static_cast<int>(v), a});
      sorted.push_back(a);
    }
    if (terms.empty()) continue;
    // Largest member count whose cheapest realization still fits the budget:
    // even the q smallest contributions must not overshoot.
    const double budget = eval.storage_budget();
    const double slack = cfg.tolerance * (1 + std::abs(budget));
    std::sort(sorted.begin(), sorted.end());
    double acc = 0;
    double fit = 0;
    for (double a : sorted) {
      acc += a;
      if (acc > budget + slack) break;
      ++fit;
    }
    count_upper = std::min(count_upper, fit);
    m.add_constraint("storage" + std::to_string(k), std::move(terms), Relation::LessEqual,
                     budget);
  }
  const auto& fp = world.fence_boundary.points;
  double count_lower = 0;
  for (std::size_t k = 0; k < fp.size(); ++k) {
    // Contributions above the requirement are clipped to it: a member that
    // meets the point alone satisfies the row either way, so the clipped row
    // holds for every genuine selection, while fractional solutions can no
    // longer cover the point with a sliver of one oversized contributor. This
    // is what keeps the relaxation bound close to the true selection size.
    const double need = eval.fence_requirements()[k];
    std::vector<LinearTerm> terms;
    sorted.clear();
    for (std::size_t v = 0; v < alive_idx.size(); ++v) {
      double a = std::min(eval.fence_contribution(alive_idx[v], k), need);
      terms.push_back({static_cast<int>(v), a});
      sorted.push_back(a);
    }
    if (terms.empty()) continue;
    // Fewest members that can possibly meet this point's requirement: even
    // the q largest contributions must reach it.
    const double slack = cfg.tolerance * (1 + std::abs(need));
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double acc = 0;
    double met = static_cast<double>(sorted.size()) + 1;
    for (std::size_t q = 0; q < sorted.size(); ++q) {
      acc += sorted[q];
      if (acc >= need - slack) {
        met = static_cast<double>(q + 1);
        break;
      }
    }
    count_lower = std::max(count_lower, met);
    m.add_constraint("fence" + std::to_string(k), std::move(terms), Relation::GreaterEqual, need);
  }
  // Selection-size window implied by the boundary rows above (sorted-prefix
  // counting: a fence point unreachable by its q strongest contributors needs
  // more than q members, a storage budget busted by the q gentlest ones
  // forbids q). The window is redundant as a constraint but lifts the
  // relaxation bound to whole-jammer granularity, which is what keeps the
  // branch-and-bound tree small at fleet sizes in the dozens.
  if (!alive_idx.empty()) {
    std::vector<LinearTerm> low, high;
    for (std::size_t v = 0; v < alive_idx.size(); ++v) {
      low.push_back({static_cast<int>(v), 1});
      high.push_back({static_cast<int>(v), 1});
    }
    m.add_constraint("count_low", std::move(low), Relation::GreaterEqual, count_lower);
    m.add_constraint("count_high", std::move(high), Relation::LessEqual, count_upper);
  }
  return m;
}

struct GreedyOptions {
  // Swap the exact per-slot solve for the cheaper rounding heuristic. The
  // schedule stays valid but slots may drain more than necessary.
  bool approximate = false;
  // Among equally cheap slots prefer the one that is lexicographically
  // smallest as a 0/1 vector over ascending ids (costs extra solves).
  bool lexicographic_tie_break = false;
  SolveOptions solver;
};

// Thrown when the per-slot program blows its node budget mid-run; the slots
// played so far are still a valid (if unfinished) schedule.
struct ScheduleResourceError : ResourceError {
  Schedule partial;
  ScheduleResourceError(const std::string& what, Schedule sched)
      : ResourceError(what), partial(std::move(sched)) {}
};

namespace detail {

// Battery states only matter for the slot program through three classes, so
// identical class vectors can reuse the previous solution outright.
inline std::string slot_cache_key(const std::vector<Jammer>& jammers, const NetworkConfig& cfg) {
  std::string key(jammers.size(), '0');
  for (std::size_t i = 0; i < jammers.size(); ++i) {
    const Jammer& j = jammers[i];
    if (j.battery < cfg.c) continue;  // dead
    bool gains_idle = j.kind == JammerKind::Rechargeable && j.battery < j.capacity;
    key[i] = gains_idle ? '2' : '1';
  }
  return key;
}

}  // namespace detail

// Slot-by-slot scheduler: play the cheapest reliable set among the survivors
// until none exists or the slot budget runs out. Works with any mix of
// jammer kinds; rechargeable ones idle-charge between activations, which the
// per-slot objective prices in.
inline Schedule greedy_schedule(const WorldModel& world, const NetworkConfig& cfg,
                                long long max_slots = 100000, const GreedyOptions& opts = {}) {
  cfg.validate();
  if (max_slots < 1) throw ParameterError("greedy_schedule: max_slots must be at least 1");

  WorldModel state = world;  // batteries evolve in here
  ReliabilityEvaluator eval(world, cfg);

  Schedule sched;
  sched.termination = Termination::SlotCapReached;

  struct CachedSlot {
    bool feasible = false;
    std::vector<int> selection;
  };
  std::unordered_map<std::string, CachedSlot> cache;

  auto solve_slot = [&](const Classification& cls) {
    CachedSlot out;
    Model m = build_slot_ilp(state, cls, cfg);
    if (m.variable_count() == 0) return out;  // everyone is dead
    Solution sol = opts.approximate ? solve_rounded(m) : solve_ilp(m, opts.solver);
    if (sol.status != SolveStatus::Optimal) return out;

    if (opts.lexicographic_tie_break && !opts.approximate) {
      // Pin variables to 0 one at a time in ascending id order, keeping a pin
      // only when the optimum survives; otherwise the variable is 1 in every
      // optimal plan and gets pinned there instead. Afterwards the pins ARE
      // the (lexicographically smallest) optimal assignment.
      double best = sol.objective;
      for (int v = 0; v < m.variable_count(); ++v) {
        m.upper[v] = 0;
        Solution probe = solve_ilp(m, opts.solver);
        if (!(probe.status == SolveStatus::Optimal && probe.objective <= best + 1e-6)) {
          m.upper[v] = 1;
          m.lower[v] = 1;
        }
      }
      out.feasible = true;
      for (int v = 0; v < m.variable_count(); ++v)
        if (m.lower[v] > 0.5) out.selection.push_back(std::stoi(m.names[v].substr(1)));
      return out;
    }

    out.feasible = true;
    for (int v = 0; v < m.variable_count(); ++v)
      if (sol.values[v] > 0.5) out.selection.push_back(std::stoi(m.names[v].substr(1)));
    return out;
  };

  bool any_rechargeable = false;
  for (const Jammer& j : world.jammers)
    if (j.kind == JammerKind::Rechargeable) any_rechargeable = true;

  std::vector<int> last_selection;
  while (sched.lifetime() < max_slots) {
    Classification cls = classify(state.jammers, cfg);

    // With no rechargeable jammers the cheapest drain can only grow as the
    // fleet shrinks, so the previous selection stays optimal until a member
    // can no longer pay for a slot; replaying it skips the solve outright.
    // Lexicographic mode re-derives its tie choice every slot and opts out.
    std::vector<int> selection;
    bool feasible = false;
    bool reused = false;
    if (!any_rechargeable && !opts.lexicographic_tie_break && !last_selection.empty()) {
      reused = true;
      for (int id : last_selection)
        if (state.jammer_by_id(id).battery < cfg.c) reused = false;
      if (reused) {
        selection = last_selection;
        feasible = true;
      }
    }

    if (!reused) {
      std::string key = detail::slot_cache_key(state.jammers, cfg);
      auto it = cache.find(key);
      if (it == cache.end()) {
        try {
          it = cache.emplace(key, solve_slot(cls)).first;
        } catch (const ResourceError& e) {
          for (const Jammer& j : state.jammers) sched.final_batteries.push_back(j.battery);
          throw ScheduleResourceError(std::string("greedy_schedule: ") + e.what(),
                                      std::move(sched));
        }
      }
      feasible = it->second.feasible;
      selection = it->second.selection;
    }

    if (!feasible) {
      sched.termination = Termination::Dead;
      break;
    }
    if (!reused && !eval.evaluate_indices(eval.indices_for_ids(selection)).reliable)
      throw ModelError("greedy_schedule: slot program returned an unreliable set");
    sched.deltas.push_back(energy_delta(selection, cls, cfg));
    apply_slot(state.jammers, selection, cfg);
    last_selection = selection;
    sched.slots.push_back(std::move(selection));
  }

  for (const Jammer& j : state.jammers) sched.final_batteries.push_back(j.battery);
  return sched;
}

}  // namespace jamsched
