#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "jamsched/geometry.hpp"
#include "jamsched/world.hpp"

using namespace jamsched;

namespace {

// Along-edge distance from p to the nearest emitted point, assuming p lies on
// the rectangle boundary. Euclidean distance is a lower bound on the walk
// distance, which is all the spacing guarantee needs.
double nearest_emitted(const Point& p, const DiscretizedBoundary& b) {
  double best = 1e300;
  for (const Point& q : b.points) best = std::min(best, distance(p, q));
  return best;
}

bool on_boundary(const Point& p, const Rect& r, double tol = 1e-12) {
  bool on_x = std::abs(p.x - r.min_x) <= tol || std::abs(p.x - r.max_x) <= tol;
  bool on_y = std::abs(p.y - r.min_y) <= tol || std::abs(p.y - r.max_y) <= tol;
  bool in_x = p.x >= r.min_x - tol && p.x <= r.max_x + tol;
  bool in_y = p.y >= r.min_y - tol && p.y <= r.max_y + tol;
  return (on_x && in_y) || (on_y && in_x);
}

}  // namespace

TEST_CASE("boundary discretization point counts") {
  Rect fence{0, 0, 100, 100};
  Rect storage{37.5, 37.5, 62.5, 62.5};

  auto fb = discretize_boundary(fence, 2.0);
  CHECK(fb.points.size() == 200);
  CHECK(fb.step == 2.0);

  // 25 m edges at step 2 leave a shorter final segment on every edge.
  auto sb = discretize_boundary(storage, 2.0);
  CHECK(sb.points.size() == 52);

  // Step equal to the edge length leaves only the corners.
  auto corners = discretize_boundary(Rect{0, 0, 10, 10}, 10.0);
  REQUIRE(corners.points.size() == 4);
  std::set<std::pair<double, double>> got;
  for (const Point& p : corners.points) got.insert({p.x, p.y});
  CHECK(got == std::set<std::pair<double, double>>{{0, 0}, {10, 0}, {0, 10}, {10, 10}});
}

TEST_CASE("boundary discretization walk properties") {
  Rect r{3, 7, 28, 19};  // 25 x 12, neither edge a multiple of the step
  double step = 2.0;
  auto b = discretize_boundary(r, step);

  // Independent count: per edge, ceil(len/step).
  auto per_edge = [&](double len) { return static_cast<std::size_t>(std::ceil(len / step)); };
  CHECK(b.points.size() == 2 * per_edge(25.0) + 2 * per_edge(12.0));

  // Every emitted point lies exactly on the boundary; no duplicates.
  std::set<std::pair<double, double>> seen;
  for (const Point& p : b.points) {
    CHECK(on_boundary(p, r));
    CHECK(seen.insert({p.x, p.y}).second);
  }

  // All four corners present exactly once.
  for (auto [cx, cy] : {std::pair{3.0, 7.0}, {28.0, 7.0}, {28.0, 19.0}, {3.0, 19.0}})
    CHECK(seen.count({cx, cy}) == 1);

  // Independent fine walk at step 0.5: every boundary point is within step/2
  // (along the edge) of some emitted point. Walk each edge densely.
  double perimeter = 2 * (25.0 + 12.0);
  for (double t = 0; t < perimeter; t += 0.5) {
    // Map walk parameter to a boundary point, counterclockwise from (3,7).
    double u = t;
    Point p;
    if (u < 25)
      p = {3 + u, 7};
    else if ((u -= 25) < 12)
      p = {28, 7 + u};
    else if ((u -= 12) < 25)
      p = {28 - u, 19};
    else
      p = {3, 19 - (u - 25)};
    CHECK(nearest_emitted(p, b) <= step / 2 + 1e-9);
  }

  CHECK_THROWS_AS(discretize_boundary(r, 0.0), ParameterError);
  CHECK_THROWS_AS(discretize_boundary(r, -1.0), ParameterError);
  CHECK_THROWS_AS(discretize_boundary(Rect{5, 5, 5, 9}, 1.0), ParameterError);
}

TEST_CASE("point distance") {
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  CHECK(distance({1, 1}, {1, 1}) == 0.0);
  CHECK(distance({-2, 0}, {2, 0}) == 4.0);
}

TEST_CASE("distance to storage boundary") {
  Rect storage{37.5, 37.5, 62.5, 62.5};

  CHECK(distance_to_storage({0, 0}, storage) == Catch::Approx(37.5 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(distance_to_storage({50, 0}, storage) == Catch::Approx(37.5).epsilon(1e-12));
  CHECK(distance_to_storage({37.5, 50}, storage) == 0.0);   // on the boundary
  CHECK(distance_to_storage({62.5, 62.5}, storage) == 0.0); // corner
  // Interior points measure to the nearest edge, not zero.
  CHECK(distance_to_storage({50, 40}, storage) == Catch::Approx(2.5));

  // The analytic distance never exceeds the distance to any discretized
  // storage-boundary point.
  auto sb = discretize_boundary(storage, 2.0);
  for (const Point& p : {Point{0, 0}, Point{50, 0}, Point{99, 99}, Point{70, 50}}) {
    double d = distance_to_storage(p, storage);
    for (const Point& q : sb.points) CHECK(d <= distance(p, q) + 1e-12);
  }
}

TEST_CASE("world construction validates nesting") {
  CHECK_NOTHROW(make_world(Rect{37.5, 37.5, 62.5, 62.5}, Rect{0, 0, 100, 100}, 2.0));
  // Storage touching or crossing the fence is rejected.
  CHECK_THROWS_AS(make_world(Rect{0, 10, 20, 20}, Rect{0, 0, 100, 100}, 2.0), ParameterError);
  CHECK_THROWS_AS(make_world(Rect{-5, 40, 50, 60}, Rect{0, 0, 100, 100}, 2.0), ParameterError);
}

TEST_CASE("deployment determinism and invariants") {
  WorldModel w = make_world(Rect{37.5, 37.5, 62.5, 62.5}, Rect{0, 0, 100, 100}, 2.0);
  NetworkConfig cfg;

  auto a = deploy_jammers(w, 50, 42, cfg, 100);
  auto b = deploy_jammers(w, 50, 42, cfg, 100);
  REQUIRE(a.jammers.size() == 50);
  for (std::size_t i = 0; i < a.jammers.size(); ++i) {
    CHECK(a.jammers[i].position == b.jammers[i].position);
    CHECK(a.jammers[i].id == static_cast<int>(i));
    CHECK(a.jammers[i].battery == 100);
    CHECK(a.jammers[i].capacity == 100);
    CHECK(a.jammers[i].kind == JammerKind::Unrechargeable);
  }

  auto c = deploy_jammers(w, 50, 43, cfg, 100);
  bool any_differs = false;
  for (std::size_t i = 0; i < c.jammers.size(); ++i)
    if (!(c.jammers[i].position == a.jammers[i].position)) any_differs = true;
  CHECK(any_differs);

  // Clearance invariants hold across a 100-seed sweep.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto d = deploy_jammers(w, 20, seed, cfg, 100);
    for (const Jammer& j : d.jammers) {
      CHECK(deployable(j.position, w.storage, w.fence, cfg.epsilon));
      CHECK(distance_to_storage(j.position, w.storage) >= cfg.epsilon - 1e-12);
    }
  }

  // First round(eta*n) jammers are flagged rechargeable, deterministically.
  auto e = deploy_jammers(w, 10, 7, cfg, 100, 0.25);
  int rech = 0;
  for (const Jammer& j : e.jammers)
    if (j.kind == JammerKind::Rechargeable) ++rech;
  CHECK(rech == 3);  // round(0.25 * 10)
  CHECK(e.jammers[0].kind == JammerKind::Rechargeable);
  CHECK(e.jammers[2].kind == JammerKind::Rechargeable);
  CHECK(e.jammers[3].kind == JammerKind::Unrechargeable);

  CHECK_THROWS_AS(deploy_jammers(w, 0, 1, cfg, 100), ParameterError);
  CHECK_THROWS_AS(deploy_jammers(w, 5, 1, cfg, 105), ParameterError);  // not a multiple of c

  // A clearance wider than the ring leaves nowhere to stand.
  NetworkConfig tight = cfg;
  tight.epsilon = 40;
  CHECK_THROWS_AS(deploy_jammers(w, 1, 1, tight, 100), DeploymentError);
}

TEST_CASE("deployment acceptance region matches the area ratio") {
  WorldModel w = make_world(Rect{37.5, 37.5, 62.5, 62.5}, Rect{0, 0, 100, 100}, 2.0);
  NetworkConfig cfg;

  // Monte-Carlo estimate of the acceptance probability of the sampler's
  // predicate, compared with the ring's share of the fence area. The epsilon
  // clearance shaves ~2.5% off; the tolerance is 5% of the ratio.
  std::mt19937_64 rng(12345);
  auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const int samples = 1'000'000;
  int accepted = 0;
  for (int i = 0; i < samples; ++i) {
    Point p{u01() * 100.0, u01() * 100.0};
    if (deployable(p, w.storage, w.fence, cfg.epsilon)) ++accepted;
  }
  double ratio = static_cast<double>(accepted) / samples;
  double area_ratio = (w.fence.area() - w.storage.area()) / w.fence.area();
  CHECK(std::abs(ratio - area_ratio) <= 0.05 * area_ratio);
}
