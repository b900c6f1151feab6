#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "jamsched/energy.hpp"
#include "jamsched/errors.hpp"
#include "jamsched/sinr.hpp"
#include "jamsched/world.hpp"

namespace jamsched {

// Sentinel for "this deployment can jam forever".
inline constexpr long long kUnboundedLifetime = std::numeric_limits<long long>::max();

namespace detail {

// Jammers at the same spot with the same kind and capacity are
// interchangeable, so battery vectors that differ only by such swaps collapse
// to one search state. Groups are index lists; the key sorts batteries within
// each group and packs them into a byte string.
struct StateCanon {
  std::vector<std::vector<std::size_t>> groups;

  explicit StateCanon(const std::vector<Jammer>& jammers) {
    std::vector<std::size_t> order(jammers.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Jammer &ja = jammers[a], &jb = jammers[b];
      if (ja.position.x != jb.position.x) return ja.position.x < jb.position.x;
      if (ja.position.y != jb.position.y) return ja.position.y < jb.position.y;
      if (ja.kind != jb.kind) return ja.kind < jb.kind;
      if (ja.capacity != jb.capacity) return ja.capacity < jb.capacity;
      return a < b;
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Jammer& j = jammers[order[i]];
      bool fresh = groups.empty();
      if (!fresh) {
        const Jammer& prev = jammers[groups.back().back()];
        fresh = prev.position.x != j.position.x || prev.position.y != j.position.y ||
                prev.kind != j.kind || prev.capacity != j.capacity;
      }
      if (fresh) groups.emplace_back();
      groups.back().push_back(order[i]);
    }
  }

  std::string key(const std::vector<int>& batteries) const {
    std::string out;
    out.reserve(batteries.size() * 4);
    std::vector<int> sorted;
    for (const auto& g : groups) {
      sorted.clear();
      for (std::size_t i : g) sorted.push_back(batteries[i]);
      std::sort(sorted.begin(), sorted.end());
      for (int b : sorted)
        for (int shift = 0; shift < 32; shift += 8)
          out.push_back(static_cast<char>(b >> shift & 0xff));
    }
    return out;
  }
};

}  // namespace detail

// Ground-truth scheduler: depth-first search over battery states, trying every
// reliable affordable subset each slot. Returns the exact maximum number of
// slots any schedule can play, or kUnboundedLifetime when some battery state
// can reach itself again (the cycle is a forever-schedule). Exponential in
// every direction, hence the hard jammer limit and the state cap.
inline long long exhaustive_optimal_lifetime(const WorldModel& world, const NetworkConfig& cfg,
                                             long long state_cap = 2'000'000) {
  cfg.validate();
  const std::size_t n = world.jammers.size();
  if (n == 0) return 0;
  if (n > 20)
    throw ResourceError("exhaustive_optimal_lifetime: " + std::to_string(n) +
                        " jammers is beyond the oracle's 2^n tables");

  ReliabilityEvaluator eval(world, cfg);
  std::vector<signed char> reliable_memo(std::size_t{1} << n, -1);
  auto mask_reliable = [&](std::uint32_t mask) {
    signed char& slot = reliable_memo[mask];
    if (slot < 0) slot = eval.evaluate_mask(mask).reliable ? 1 : 0;
    return slot == 1;
  };

  detail::StateCanon canon(world.jammers);
  std::unordered_map<std::string, long long> memo;
  std::unordered_set<std::string> on_stack;

  std::vector<int> batteries;
  for (const Jammer& j : world.jammers) batteries.push_back(j.battery);

  auto charge_idle = [&](std::vector<int>& b, std::uint32_t active_mask) {
    for (std::size_t i = 0; i < n; ++i) {
      const Jammer& j = world.jammers[i];
      if (active_mask >> i & 1u)
        b[i] -= cfg.c;
      else if (j.kind == JammerKind::Rechargeable && b[i] < j.capacity)
        ++b[i];
    }
  };

  auto dfs = [&](auto&& self, std::vector<int>& state) -> long long {
    std::string key = canon.key(state);
    if (on_stack.count(key)) return kUnboundedLifetime;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (static_cast<long long>(memo.size() + on_stack.size()) >= state_cap)
      throw ResourceError("exhaustive_optimal_lifetime: state cap " + std::to_string(state_cap) +
                          " exhausted");
    on_stack.insert(key);

    std::uint32_t alive = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (state[i] >= cfg.c) alive |= 1u << i;

    long long best = 0;
    std::vector<int> next;
    for (std::uint32_t sub = alive; sub; sub = (sub - 1) & alive) {
      if (!mask_reliable(sub)) continue;
      next = state;
      charge_idle(next, sub);
      long long tail = self(self, next);
      if (tail == kUnboundedLifetime) {
        best = kUnboundedLifetime;
        break;
      }
      best = std::max(best, tail + 1);
    }

    on_stack.erase(key);
    memo.emplace(std::move(key), best);
    return best;
  };

  return dfs(dfs, batteries);
}

// Intersection graph of a family of id sets: one vertex per set, an edge
// whenever two sets share a jammer. Disjointness is exactly independence.
struct ConflictGraph {
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<char>> adjacent;  // symmetric, no self loops

  std::size_t vertex_count() const { return sets.size(); }
};

inline ConflictGraph build_conflict_graph(const std::vector<std::vector<int>>& sets) {
  ConflictGraph g;
  g.sets = sets;
  for (auto& s : g.sets) std::sort(s.begin(), s.end());
  const std::size_t v = g.sets.size();
  g.adjacent.assign(v, std::vector<char>(v, 0));
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = a + 1; b < v; ++b) {
      const auto &sa = g.sets[a], &sb = g.sets[b];
      std::size_t i = 0, k = 0;
      bool hit = false;
      while (i < sa.size() && k < sb.size()) {
        if (sa[i] == sb[k]) {
          hit = true;
          break;
        }
        sa[i] < sb[k] ? ++i : ++k;
      }
      g.adjacent[a][b] = g.adjacent[b][a] = hit;
    }
  return g;
}

// Size of a largest independent set, by branch and bound: branch on the
// highest-degree remaining vertex, include-first. Exact but exponential, so
// the vertex count is capped (raise the cap deliberately, it is the caller's
// wait time).
inline long long max_independent_set(const ConflictGraph& g, std::size_t max_vertices = 20) {
  if (g.vertex_count() > max_vertices)
    throw ResourceError("max_independent_set: " + std::to_string(g.vertex_count()) +
                        " vertices exceeds the cap of " + std::to_string(max_vertices));
  long long best = 0;
  std::vector<int> all(g.vertex_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

  auto rec = [&](auto&& self, const std::vector<int>& cands, long long have) -> void {
    if (have + static_cast<long long>(cands.size()) <= best) return;
    if (cands.empty()) {
      best = std::max(best, have);
      return;
    }
    int pick = cands[0];
    std::size_t pick_deg = 0;
    for (int v : cands) {
      std::size_t deg = 0;
      for (int u : cands)
        if (g.adjacent[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) ++deg;
      if (deg > pick_deg) {
        pick_deg = deg;
        pick = v;
      }
    }
    std::vector<int> without;
    for (int v : cands)
      if (v != pick && !g.adjacent[static_cast<std::size_t>(pick)][static_cast<std::size_t>(v)])
        without.push_back(v);
    self(self, without, have + 1);  // take it
    if (pick_deg > 0) {             // isolated vertices are always taken
      without.clear();
      for (int v : cands)
        if (v != pick) without.push_back(v);
      self(self, without, have);
    }
  };
  rec(rec, all, 0);
  return best;
}

}  // namespace jamsched
