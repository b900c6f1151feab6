#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "jamsched/energy.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/ilp.hpp"
#include "jamsched/sinr.hpp"
#include "jamsched/world.hpp"

namespace jamsched {

namespace detail {

// Min-cardinality covering program over the jammers selected by `use`
// (aligned with world.jammers; empty = all). Same rows as the slot program
// but with unit costs and no battery bookkeeping.
inline Model coverage_model(const WorldModel& world, const NetworkConfig& cfg,
                            const std::vector<char>& use) {
  ReliabilityEvaluator eval(world, cfg);
  Model m;
  m.sense = Sense::Minimize;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < world.jammers.size(); ++i) {
    if (!use.empty() && !use[i]) continue;
    int v = m.add_variable("x" + std::to_string(world.jammers[i].id), 0, 1, true);
    m.set_objective(v, 1);
    chosen.push_back(i);
  }
  const auto& sp = world.storage_boundary.points;
  double count_upper = static_cast<double>(chosen.size());
  std::vector<double> sorted;
  for (std::size_t k = 0; k < sp.size(); ++k) {
    std::vector<LinearTerm> terms;
    sorted.clear();
    for (std::size_t v = 0; v < chosen.size(); ++v) {
      double a = eval.storage_contribution(chosen[v], k);
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
    for (std::size_t v = 0; v < chosen.size(); ++v) {
      double a = std::min(eval.fence_contribution(chosen[v], k), need);
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
  if (!chosen.empty()) {
    std::vector<LinearTerm> low, high;
    for (std::size_t v = 0; v < chosen.size(); ++v) {
      low.push_back({static_cast<int>(v), 1});
      high.push_back({static_cast<int>(v), 1});
    }
    m.add_constraint("count_low", std::move(low), Relation::GreaterEqual, count_lower);
    m.add_constraint("count_high", std::move(high), Relation::LessEqual, count_upper);
  }
  return m;
}

inline std::vector<int> selected_ids(const Model& m, const Solution& sol) {
  std::vector<int> ids;
  for (int v = 0; v < m.variable_count(); ++v)
    if (sol.values[v] > 0.5) ids.push_back(std::stoi(m.names[v].substr(1)));
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace detail

// Fewest simultaneously active jammers that still protect both boundaries,
// ignoring batteries: a floor on the cost of every slot anyone can ever play.
inline long long min_active_jammers(const WorldModel& world, const NetworkConfig& cfg,
                                    const SolveOptions& solver = {}) {
  cfg.validate();
  if (world.jammers.empty()) throw ParameterError("min_active_jammers: no jammers deployed");
  Model m = detail::coverage_model(world, cfg, {});
  Solution sol = solve_ilp(m, solver);
  if (sol.status != SolveStatus::Optimal)
    throw NoReliableSetError("min_active_jammers: no subset protects both boundaries");
  return std::llround(sol.objective);
}

// Greedily peels up to `target` pairwise disjoint reliable subsets out of the
// rechargeable jammers, smallest first. A shorter list just means the peeling
// got stuck, not that no better packing exists.
inline std::vector<std::vector<int>> find_disjoint_reliable_subsets(const WorldModel& world,
                                                                    const NetworkConfig& cfg,
                                                                    int target,
                                                                    const SolveOptions& solver = {}) {
  cfg.validate();
  if (target < 0) throw ParameterError("find_disjoint_reliable_subsets: target must be non-negative");
  std::vector<char> remaining(world.jammers.size(), 0);
  for (std::size_t i = 0; i < world.jammers.size(); ++i)
    remaining[i] = world.jammers[i].kind == JammerKind::Rechargeable;

  std::vector<std::vector<int>> packs;
  while (static_cast<int>(packs.size()) < target) {
    if (std::none_of(remaining.begin(), remaining.end(), [](char c) { return c != 0; })) break;
    Model m = detail::coverage_model(world, cfg, remaining);
    Solution sol = solve_ilp(m, solver);
    if (sol.status != SolveStatus::Optimal) break;
    std::vector<int> ids = detail::selected_ids(m, sol);
    for (int id : ids)
      for (std::size_t i = 0; i < world.jammers.size(); ++i)
        if (world.jammers[i].id == id) remaining[i] = 0;
    packs.push_back(std::move(ids));
  }
  return packs;
}

enum class LifetimeVerdict {
  Infinite,            // a c+1-way disjoint rechargeable rotation exists
  FiniteNecessaryFail, // too few rechargeable jammers for any such rotation
  FiniteNotFound,      // the count is there but no disjoint packing turned up
};

struct LifetimeCertificate {
  LifetimeVerdict verdict = LifetimeVerdict::FiniteNecessaryFail;
  long long min_active = 0;         // fewest jammers any reliable set needs (0: none exists)
  long long rechargeable_count = 0;
  long long required = 0;           // (c+1) * min_active
  // c+1 disjoint rechargeable reliable sets when verdict is Infinite: playing
  // them round-robin recharges every set fully while the others jam.
  std::vector<std::vector<int>> plan;
};

// Decides whether the deployment can jam forever. Sufficiency is witnessed by
// an explicit rotation plan; the necessary direction only counts heads, so a
// FiniteNotFound verdict is honest uncertainty rather than proof.
inline LifetimeCertificate infinite_lifetime_certificate(const WorldModel& world,
                                                         const NetworkConfig& cfg,
                                                         const SolveOptions& solver = {}) {
  cfg.validate();
  LifetimeCertificate cert;
  for (const Jammer& j : world.jammers)
    if (j.kind == JammerKind::Rechargeable) ++cert.rechargeable_count;

  try {
    cert.min_active = min_active_jammers(world, cfg, solver);
  } catch (const NoReliableSetError&) {
    return cert;  // nothing protects the boundaries, finite trivially
  }
  cert.required = (static_cast<long long>(cfg.c) + 1) * cert.min_active;
  if (cert.rechargeable_count < cert.required) return cert;

  cert.plan = find_disjoint_reliable_subsets(world, cfg, cfg.c + 1, solver);
  if (static_cast<int>(cert.plan.size()) == cfg.c + 1) {
    cert.verdict = LifetimeVerdict::Infinite;
  } else {
    cert.verdict = LifetimeVerdict::FiniteNotFound;
    cert.plan.clear();
  }
  return cert;
}

// Lifetime of the no-scheduler policy: every jammer that can pay for the slot
// jams, every slot, until the survivors stop being reliable. Rechargeable
// stragglers can revive and make this run forever, hence the slot cap.
inline long long baseline_lifetime(const WorldModel& world, const NetworkConfig& cfg,
                                   long long max_slots = 100000) {
  cfg.validate();
  if (max_slots < 1) throw ParameterError("baseline_lifetime: max_slots must be at least 1");
  if (world.jammers.empty()) return 0;

  ReliabilityEvaluator eval(world, cfg);
  std::vector<Jammer> jammers = world.jammers;
  long long slots = 0;
  while (slots < max_slots) {
    std::vector<int> active;
    for (const Jammer& j : jammers)
      if (j.battery >= cfg.c) active.push_back(j.id);
    if (active.empty()) break;
    if (!eval.evaluate_indices(eval.indices_for_ids(active)).reliable) break;
    apply_slot(jammers, active, cfg);
    ++slots;
  }
  return slots;
}

}  // namespace jamsched
