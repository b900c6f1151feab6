#pragma once

#include <string>
#include <vector>

#include "jamsched/energy.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/sinr.hpp"
#include "jamsched/world.hpp"

namespace jamsched {

enum class Termination {
  Dead,            // no reliable affordable subset was left
  SlotCapReached,  // the slot budget ran out first
};

// A concrete activation plan: which jammer ids jam in each slot, the net
// battery drain each slot caused, and where the batteries ended up. Lifetime
// is simply the number of slots played.
struct Schedule {
  std::vector<std::vector<int>> slots;
  std::vector<long long> deltas;  // energy_delta of each slot, aligned with slots
  Termination termination = Termination::Dead;
  // Batteries after the last slot, aligned with the world's jammer order.
  std::vector<int> final_batteries;

  long long lifetime() const { return static_cast<long long>(slots.size()); }
};

// Replays a plan against fresh copies of the world's jammers, enforcing that
// every slot is reliable and affordable, and returns the jammers in their
// final state. This is the one consistency check every scheduler runs on its
// own output before handing it back.
inline std::vector<Jammer> replay_schedule(const WorldModel& world, const NetworkConfig& cfg,
                                           const std::vector<std::vector<int>>& slots) {
  std::vector<Jammer> jammers = world.jammers;
  ReliabilityEvaluator eval(world, cfg);
  for (std::size_t t = 0; t < slots.size(); ++t) {
    if (!eval.evaluate_indices(eval.indices_for_ids(slots[t])).reliable)
      throw SelectionError("replay_schedule: slot " + std::to_string(t) + " is not reliable");
    apply_slot(jammers, slots[t], cfg);  // throws if anyone active cannot pay
  }
  return jammers;
}

}  // namespace jamsched
