#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jamsched/config.hpp"
#include "jamsched/energy.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/geometry.hpp"

namespace jamsched {

// The protected storage region, the outer fence, both discretized boundaries,
// and the deployed jammers. Constraints are only ever evaluated on the
// discretized boundary points.
struct WorldModel {
  Rect storage;
  Rect fence;
  DiscretizedBoundary storage_boundary;
  DiscretizedBoundary fence_boundary;
  std::vector<Jammer> jammers;

  const Jammer& jammer_by_id(int id) const {
    for (const Jammer& j : jammers)
      if (j.id == id) return j;
    throw LookupError("unknown jammer id " + std::to_string(id));
  }
};

inline WorldModel make_world(const Rect& storage, const Rect& fence, double step) {
  validate_rect(storage, "make_world storage");
  validate_rect(fence, "make_world fence");
  if (!fence.strictly_contains(storage))
    throw ParameterError("make_world: storage must lie strictly inside the fence");
  WorldModel w;
  w.storage = storage;
  w.fence = fence;
  w.storage_boundary = discretize_boundary(storage, step);
  w.fence_boundary = discretize_boundary(fence, step);
  return w;
}

// True when p keeps at least `clearance` distance from both the fence and the
// storage boundaries while lying inside the fence and outside the storage.
inline bool deployable(const Point& p, const Rect& storage, const Rect& fence,
                       double clearance) {
  bool inside_fence = p.x >= fence.min_x + clearance && p.x <= fence.max_x - clearance &&
                      p.y >= fence.min_y + clearance && p.y <= fence.max_y - clearance;
  bool clear_of_storage = p.x <= storage.min_x - clearance || p.x >= storage.max_x + clearance ||
                          p.y <= storage.min_y - clearance || p.y >= storage.max_y + clearance;
  return inside_fence && clear_of_storage;
}

namespace detail {

// Deterministic uniform double in [0,1) from the engine's raw 64-bit output,
// so deployments do not depend on the standard library's distribution choices.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Places `count` jammers uniformly in the ring between storage and fence by
// rejection sampling, honoring the clearance cfg.epsilon. Identical seeds give
// identical placements. Ids run 0..count-1 in placement order; every jammer
// starts unrechargeable at full battery. rechargeable_fraction > 0 flips the
// first round(fraction*count) jammers to rechargeable.
inline WorldModel deploy_jammers(const WorldModel& world, int count, std::uint64_t seed,
                                 const NetworkConfig& cfg, int battery_units,
                                 double rechargeable_fraction = 0.0) {
  cfg.validate();
  if (count <= 0) throw ParameterError("deploy_jammers: count must be positive");
  if (battery_units <= 0) throw ParameterError("deploy_jammers: battery must be positive");
  if (battery_units % cfg.c != 0)
    throw ParameterError("deploy_jammers: battery must be a whole number of activations (multiple of c)");
  if (rechargeable_fraction < 0 || rechargeable_fraction > 1)
    throw ParameterError("deploy_jammers: rechargeable fraction must be in [0,1]");

  WorldModel out = world;
  out.jammers.clear();
  out.jammers.reserve(static_cast<std::size_t>(count));

  std::mt19937_64 rng(seed);
  const long long budget = 10000LL * count;
  long long attempts = 0;
  int rechargeable = static_cast<int>(std::llround(rechargeable_fraction * count));
  while (static_cast<int>(out.jammers.size()) < count) {
    if (++attempts > budget)
      throw DeploymentError("deploy_jammers: rejection sampling exhausted its attempt budget");
    Point p{world.fence.min_x + detail::uniform01(rng) * world.fence.width(),
            world.fence.min_y + detail::uniform01(rng) * world.fence.height()};
    if (!deployable(p, world.storage, world.fence, cfg.epsilon)) continue;
    Jammer j;
    j.id = static_cast<int>(out.jammers.size());
    j.position = p;
    j.kind = j.id < rechargeable ? JammerKind::Rechargeable : JammerKind::Unrechargeable;
    j.battery = battery_units;
    j.capacity = battery_units;
    out.jammers.push_back(j);
  }
  return out;
}

}  // namespace jamsched
