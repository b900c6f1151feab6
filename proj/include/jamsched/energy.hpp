#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "jamsched/config.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/geometry.hpp"

namespace jamsched {

enum class JammerKind { Unrechargeable, Rechargeable };

struct Jammer {
  int id = 0;
  Point position;
  JammerKind kind = JammerKind::Unrechargeable;
  int battery = 0;   // current charge, in energy units
  int capacity = 0;  // maximum charge; full batteries sleep instead of charging

  // Whole activations left before this jammer dies.
  int life_span(const NetworkConfig& cfg) const { return battery / cfg.c; }
};

// Battery-state partition of a jammer population for one slot. A jammer is
// dead when it cannot afford a single activation (battery < c), full when at
// capacity, normal otherwise; the three classes are disjoint and dead wins
// over full if capacity < c ever occurs.
struct Classification {
  std::vector<int> dead;
  std::vector<int> full;
  std::vector<int> normal;
  std::vector<int> unrechargeable;
  std::vector<int> rechargeable;
};

inline Classification classify(const std::vector<Jammer>& jammers, const NetworkConfig& cfg) {
  cfg.validate();
  Classification cl;
  for (const Jammer& j : jammers) {
    if (j.battery < 0 || j.capacity <= 0 || j.battery > j.capacity)
      throw ParameterError("classify: jammer " + std::to_string(j.id) + " has invalid battery state");
    if (j.battery < cfg.c)
      cl.dead.push_back(j.id);
    else if (j.battery == j.capacity)
      cl.full.push_back(j.id);
    else
      cl.normal.push_back(j.id);
    (j.kind == JammerKind::Rechargeable ? cl.rechargeable : cl.unrechargeable).push_back(j.id);
  }
  return cl;
}

namespace detail {

inline bool id_in(const std::vector<int>& ids, int id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

}  // namespace detail

// Net energy change of one slot: consumed minus gained, for the given set of
// activated ids against the current classification. conventions:
//   - every active jammer consumes c;
//   - every idle rechargeable jammer that is neither dead nor full gains 1,
//     which shows up here as the constant -|rechargeable ∩ normal| plus c+1
//     (instead of c) for each activated one of them.
// Dead rechargeable jammers also trickle-charge during the slot, but that gain
// is a constant independent of the selection and is not part of this value.
inline long long energy_delta(const std::vector<int>& selection, const Classification& cls,
                              const NetworkConfig& cfg) {
  cfg.validate();
  long long delta = 0;
  long long normal_rechargeable = 0;
  for (int id : cls.normal)
    if (detail::id_in(cls.rechargeable, id)) ++normal_rechargeable;

  for (int id : selection) {
    if (detail::id_in(cls.dead, id))
      throw SelectionError("energy_delta: jammer " + std::to_string(id) + " is dead");
    bool rechargeable = detail::id_in(cls.rechargeable, id);
    bool normal = detail::id_in(cls.normal, id);
    if (!normal && !detail::id_in(cls.full, id))
      throw SelectionError("energy_delta: jammer " + std::to_string(id) + " is not in the classification");
    delta += (rechargeable && normal) ? cfg.c + 1 : cfg.c;
  }
  return delta - normal_rechargeable;
}

// Advances every battery by one slot: active jammers pay c, idle rechargeable
// jammers below capacity gain 1 (dead ones included — they can come back),
// everything else is untouched. Activating a dead jammer is an error.
inline void apply_slot(std::vector<Jammer>& jammers, const std::vector<int>& selection,
                       const NetworkConfig& cfg) {
  cfg.validate();
  std::vector<char> active(jammers.size(), 0);
  for (int id : selection) {
    bool found = false;
    for (std::size_t i = 0; i < jammers.size(); ++i) {
      if (jammers[i].id == id) {
        if (jammers[i].battery < cfg.c)
          throw SelectionError("apply_slot: jammer " + std::to_string(id) + " is dead");
        if (active[i]) throw SelectionError("apply_slot: jammer " + std::to_string(id) + " selected twice");
        active[i] = 1;
        found = true;
        break;
      }
    }
    if (!found) throw LookupError("apply_slot: unknown jammer id " + std::to_string(id));
  }
  for (std::size_t i = 0; i < jammers.size(); ++i) {
    Jammer& j = jammers[i];
    if (active[i])
      j.battery -= cfg.c;
    else if (j.kind == JammerKind::Rechargeable && j.battery < j.capacity)
      j.battery = std::min(j.battery + 1, j.capacity);
  }
}

}  // namespace jamsched
