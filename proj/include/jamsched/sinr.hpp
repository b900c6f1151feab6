#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "jamsched/config.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/world.hpp"

namespace jamsched {

// Aggregate jamming interference the active ids produce at `point`, i.e.
// p_j * sum ||i - point||^-gamma. Unknown ids are an error.
inline double interference_at(const Point& point, const std::vector<int>& active_ids,
                              const WorldModel& world, const NetworkConfig& cfg) {
  cfg.validate();
  double sum = 0;
  for (int id : active_ids) {
    const Jammer& j = world.jammer_by_id(id);
    sum += std::pow(distance(j.position, point), -cfg.gamma);
  }
  return cfg.p_j * sum;
}

struct ReliabilityReport {
  bool reliable = false;
  // min over storage points of (budget - interference); negative = violation.
  double worst_storage_margin = 0;
  // min over fence points of (interference - requirement); negative = violation.
  double worst_fence_margin = 0;
  // First violating boundary point (storage boundary scanned first, then
  // fence, both in emission order). Empty when reliable.
  std::optional<Point> violating_point;
};

// Precomputes per-jammer contributions at every boundary point so that many
// subsets of one world can be tested cheaply. Interference coefficients here
// have p_j divided out; the right-hand sides absorb it instead.
class ReliabilityEvaluator {
public:
  ReliabilityEvaluator(const WorldModel& world, const NetworkConfig& cfg)
      : world_(&world), cfg_(cfg) {
    cfg.validate();
    n_ = world.jammers.size();
    const auto& sp = world.storage_boundary.points;
    const auto& fp = world.fence_boundary.points;
    storage_contrib_.resize(n_ * sp.size());
    fence_contrib_.resize(n_ * fp.size());
    for (std::size_t i = 0; i < n_; ++i) {
      const Point pos = world.jammers[i].position;
      for (std::size_t k = 0; k < sp.size(); ++k)
        storage_contrib_[i * sp.size() + k] = std::pow(distance(pos, sp[k]), -cfg.gamma);
      for (std::size_t k = 0; k < fp.size(); ++k)
        fence_contrib_[i * fp.size() + k] = std::pow(distance(pos, fp[k]), -cfg.gamma);
    }
    storage_budget_ = cfg.storage_rhs();
    fence_need_.resize(fp.size());
    for (std::size_t k = 0; k < fp.size(); ++k)
      fence_need_[k] = cfg.fence_rhs(distance_to_storage(fp[k], world.storage));
  }

  std::size_t jammer_count() const { return n_; }
  const WorldModel& world() const { return *world_; }
  double storage_budget() const { return storage_budget_; }
  const std::vector<double>& fence_requirements() const { return fence_need_; }
  // Contribution of jammer index i at storage boundary point k (p_j divided out).
  double storage_contribution(std::size_t i, std::size_t k) const {
    return storage_contrib_[i * world_->storage_boundary.points.size() + k];
  }
  double fence_contribution(std::size_t i, std::size_t k) const {
    return fence_contrib_[i * world_->fence_boundary.points.size() + k];
  }

  // Reliability of the subset given by jammer *indices* (not ids).
  ReliabilityReport evaluate_indices(const std::vector<std::size_t>& idx) const {
    ReliabilityReport rep;
    const auto& sp = world_->storage_boundary.points;
    const auto& fp = world_->fence_boundary.points;
    const double tol = cfg_.tolerance;

    double worst_s = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < sp.size(); ++k) {
      double lhs = 0;
      for (std::size_t i : idx) lhs += storage_contribution(i, k);
      double margin = storage_budget_ - lhs;
      if (margin < worst_s) worst_s = margin;
      if (!rep.violating_point && margin < -tol * (1 + std::abs(storage_budget_)))
        rep.violating_point = sp[k];
    }
    double worst_f = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < fp.size(); ++k) {
      double lhs = 0;
      for (std::size_t i : idx) lhs += fence_contribution(i, k);
      double margin = lhs - fence_need_[k];
      if (margin < worst_f) worst_f = margin;
      if (!rep.violating_point && margin < -tol * (1 + std::abs(fence_need_[k])))
        rep.violating_point = fp[k];
    }
    rep.worst_storage_margin = sp.empty() ? 0 : worst_s;
    rep.worst_fence_margin = fp.empty() ? 0 : worst_f;
    rep.reliable = !rep.violating_point.has_value();
    return rep;
  }

  // Same, for a bitmask over jammer indices (bit i = jammer index i active).
  ReliabilityReport evaluate_mask(std::uint64_t mask) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_; ++i)
      if (mask >> i & 1u) idx.push_back(i);
    return evaluate_indices(idx);
  }

  std::vector<std::size_t> indices_for_ids(const std::vector<int>& ids) const {
    std::vector<std::size_t> idx;
    idx.reserve(ids.size());
    for (int id : ids) {
      bool found = false;
      for (std::size_t i = 0; i < n_; ++i) {
        if (world_->jammers[i].id == id) {
          idx.push_back(i);
          found = true;
          break;
        }
      }
      if (!found) throw LookupError("unknown jammer id " + std::to_string(id));
    }
    return idx;
  }

private:
  const WorldModel* world_;
  NetworkConfig cfg_;
  std::size_t n_ = 0;
  std::vector<double> storage_contrib_;
  std::vector<double> fence_contrib_;
  double storage_budget_ = 0;
  std::vector<double> fence_need_;
};

// One-shot reliability check of an active id set: the storage-side cap and the
// fence-side coverage requirement must both hold at every discretized boundary
// point, within the configured relative tolerance.
inline ReliabilityReport is_reliable(const std::vector<int>& active_ids, const WorldModel& world,
                                     const NetworkConfig& cfg) {
  ReliabilityEvaluator eval(world, cfg);
  return eval.evaluate_indices(eval.indices_for_ids(active_ids));
}

struct ActiveCountBounds {
  long long lower = 0;  // every reliable set has at least this many members
  long long upper = 0;  // ... and at most this many
};

// Necessary cardinality bounds on any reliable subset, derived by replacing
// every distance with the extreme one over the whole deployment:
//   upper = floor(min over storage points of budget * (max_i ||i-s||)^gamma)
//   lower = ceil (max over fence points of need(p) * (min_i ||i-p||)^gamma)
// Rounding is conservative (floor/ceil with a small slack) so the bounds stay
// valid necessary conditions; lower may exceed upper, meaning no reliable set
// exists. Requires at least one deployed jammer.
inline ActiveCountBounds active_count_bounds(const WorldModel& world, const NetworkConfig& cfg) {
  cfg.validate();
  if (world.jammers.empty()) throw ParameterError("active_count_bounds: no jammers deployed");

  double upper = std::numeric_limits<double>::infinity();
  for (const Point& s : world.storage_boundary.points) {
    double far = 0;
    for (const Jammer& j : world.jammers) far = std::max(far, distance(j.position, s));
    upper = std::min(upper, cfg.storage_rhs() * std::pow(far, cfg.gamma));
  }
  double lower = 0;
  for (const Point& p : world.fence_boundary.points) {
    double near = std::numeric_limits<double>::infinity();
    for (const Jammer& j : world.jammers) near = std::min(near, distance(j.position, p));
    double need = cfg.fence_rhs(distance_to_storage(p, world.storage));
    lower = std::max(lower, need * std::pow(near, cfg.gamma));
  }

  ActiveCountBounds b;
  const double n = static_cast<double>(world.jammers.size());
  double um = std::min(upper, n);
  double u = std::floor(um + 1e-9 * (1 + std::abs(um)));
  double l = std::ceil(std::max(lower, 0.0) - 1e-9 * (1 + std::abs(lower)));
  b.upper = static_cast<long long>(std::min(u, n));
  b.lower = static_cast<long long>(std::max(l, 0.0));
  return b;
}

}  // namespace jamsched
