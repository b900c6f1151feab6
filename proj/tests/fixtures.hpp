#pragma once

// Handcrafted worlds with fully verified reliability structure, shared by the
// unit tests and the acceptance checks. Expected values in the tests are
// frozen against these exact coordinates and thresholds, so every number here
// is load-bearing: nudging a position or a threshold changes which subsets
// are reliable and invalidates the frozen answers.

#include <cstdint>
#include <utility>

#include "jamsched/world.hpp"

namespace fixtures {

using namespace jamsched;

// A world plus the physics it was tuned under; fixtures are only meaningful
// as a pair.
struct Fixture {
  WorldModel world;
  NetworkConfig cfg;
};

// 8x8 fence around a 2x2 central storage block, one boundary point every 4
// units: few enough points to reason about by hand, enough to constrain all
// four sides.
inline WorldModel small_arena() { return make_world(Rect{3, 3, 5, 5}, Rect{0, 0, 8, 8}, 4); }

// Physics for the small arena: steep attenuation (gamma 4) keeps influence
// local, and the storage budget is loose enough that reliability is decided
// entirely at the fence; delta2 is the tuning knob the fixtures differ in.
inline NetworkConfig small_arena_config(double delta2) {
  NetworkConfig cfg;
  cfg.p_t = 10;
  cfg.p_j = 1;
  cfg.gamma = 4;
  cfg.delta1 = 1e-3;
  cfg.delta2 = delta2;
  cfg.lambda = 4;
  return cfg;
}

// Two jammers on opposite sides of the storage; neither side's fence points
// can be satisfied by the other jammer alone, so the only minimal reliable
// set is {0,1}. That stays true even when either position is occupied by up
// to five jammers at once. Unrechargeable, two activations each.
inline Fixture opposed_pair() {
  Fixture f{small_arena(), small_arena_config(45)};
  const double xs[2] = {7.5, 0.5}, ys[2] = {6, 2};
  for (int i = 0; i < 2; ++i) {
    Jammer j;
    j.id = i;
    j.position = {xs[i], ys[i]};
    j.battery = j.capacity = 2 * f.cfg.c;
    f.world.jammers.push_back(j);
  }
  return f;
}

// Five rechargeable jammers stacked on each opposed-pair position, recharge
// time c = 4 and battery 4 = capacity - c. The five disjoint cross pairs
// {0,1},{2,3},...,{8,9} rotated round-robin give every jammer exactly c idle
// slots between activations, restoring each battery to its starting level
// every c+1 slots — the layout can run forever.
inline Fixture rotating_pairs() {
  Fixture f{small_arena(), small_arena_config(45)};
  f.cfg.c = 4;
  const double xs[2] = {7.5, 0.5}, ys[2] = {6, 2};
  for (int i = 0; i < 10; ++i) {
    Jammer j;
    j.id = i;
    j.position = {xs[i % 2], ys[i % 2]};
    j.kind = JammerKind::Rechargeable;
    j.capacity = 8;
    j.battery = 4;
    f.world.jammers.push_back(j);
  }
  return f;
}

// The opposed pair (moved off-grid) plus two decoys stacked far away in a
// corner where they contribute nothing useful. All four are rechargeable with
// c = 1, so perpetual play needs c+1 = 2 disjoint reliable packs; four
// rechargeable jammers with minimum pack size 2 pass the counting test, yet
// the only reliable pack is {0,1} and the decoys cannot form a second one.
inline Fixture pair_with_decoys() {
  Fixture f{small_arena(), small_arena_config(39)};
  f.cfg.c = 1;
  const double xs[4] = {5.75, 2.75, 7.5, 7.5}, ys[4] = {1, 6.25, 7.5, 7.5};
  for (int i = 0; i < 4; ++i) {
    Jammer j;
    j.id = i;
    j.position = {xs[i], ys[i]};
    j.kind = JammerKind::Rechargeable;
    j.capacity = 2;
    j.battery = 2;
    f.world.jammers.push_back(j);
  }
  return f;
}

// Six jammers in a wide 24x12 arena whose minimal reliable sets are exactly
// {0,1,2,4}, {0,2,3} and {1,5}. Unrechargeable, two activations each. The
// richest small fixture: the best schedule plays {0,2,3} and {1,5} twice
// each for lifetime 4, playing each set once only reaches 3, and keeping
// everything on dies after 2 slots.
inline Fixture three_set_world() {
  NetworkConfig cfg;
  cfg.p_t = 10;
  cfg.p_j = 1;
  cfg.gamma = 4;
  cfg.delta1 = 1e-3;
  cfg.delta2 = 33;
  cfg.lambda = 6;
  Fixture f{make_world(Rect{10, 4.25, 14, 8.25}, Rect{0, 0, 24, 12}, 6), cfg};
  const double xs[6] = {9.5, 10.75, 23.5, 9.5, 4.5, 14};
  const double ys[6] = {5.5, 11.5, 6.75, 7.25, 0.5, 0.5};
  for (int i = 0; i < 6; ++i) {
    Jammer j;
    j.id = i;
    j.position = {xs[i], ys[i]};
    j.battery = j.capacity = 2 * f.cfg.c;
    f.world.jammers.push_back(j);
  }
  return f;
}

// Seeded scatter world in the desk-scale arena (40x40 fence, 10x10 central
// storage, boundary step 2): `count` unrechargeable jammers dropped uniformly
// in the ring, each funded for `lifespans` activations. The thresholds are
// relaxed so random placements give a healthy mix of rich, sparse, and
// hopeless reliability structures.
inline Fixture scatter_world(std::uint64_t seed, int count, int lifespans) {
  NetworkConfig cfg;
  cfg.p_j = 20;
  cfg.delta1 = 0.2;
  cfg.lambda = 2;
  WorldModel arena = make_world(Rect{15, 15, 25, 25}, Rect{0, 0, 40, 40}, 2);
  WorldModel world = deploy_jammers(arena, count, seed, cfg, lifespans * cfg.c);
  return {std::move(world), cfg};
}

}  // namespace fixtures
