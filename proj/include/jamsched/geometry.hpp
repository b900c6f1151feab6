#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "jamsched/errors.hpp"

namespace jamsched {

struct Point {
  double x = 0;
  double y = 0;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Axis-aligned rectangle, corners (min_x,min_y) and (max_x,max_y).
struct Rect {
  double min_x = 0;
  double min_y = 0;
  double max_x = 0;
  double max_y = 0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }

  bool contains(const Point& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  bool strictly_contains(const Point& p) const {
    return p.x > min_x && p.x < max_x && p.y > min_y && p.y < max_y;
  }
  // True when `inner` lies strictly inside this rectangle (no touching edges).
  bool strictly_contains(const Rect& inner) const {
    return inner.min_x > min_x && inner.min_y > min_y && inner.max_x < max_x &&
           inner.max_y < max_y;
  }
};

inline void validate_rect(const Rect& r, const char* what) {
  if (!(r.min_x < r.max_x) || !(r.min_y < r.max_y))
    throw ParameterError(std::string(what) + ": degenerate rectangle");
}

// Boundary of a rectangle sampled every `step` meters.
struct DiscretizedBoundary {
  std::vector<Point> points;
  double step = 0;
};

// Walks the four edges counterclockwise starting at (min_x,min_y), emitting a
// point every `step` meters. Each corner is emitted exactly once, as the first
// point of its edge; when an edge length is not a multiple of `step` the final
// segment before the next corner is simply shorter. Per edge that is
// ceil(len/step) points, so consecutive emitted points are never more than
// `step` apart along the boundary.
inline DiscretizedBoundary discretize_boundary(const Rect& r, double step) {
  if (!(step > 0)) throw ParameterError("discretize_boundary: step must be positive");
  validate_rect(r, "discretize_boundary");

  DiscretizedBoundary out;
  out.step = step;

  // Corner, unit direction along the edge, edge length.
  struct Edge {
    Point from;
    double dx, dy, len;
  };
  const Edge edges[4] = {
      {{r.min_x, r.min_y}, 1, 0, r.width()},
      {{r.max_x, r.min_y}, 0, 1, r.height()},
      {{r.max_x, r.max_y}, -1, 0, r.width()},
      {{r.min_x, r.max_y}, 0, -1, r.height()},
  };
  for (const Edge& e : edges) {
    // ceil with a small guard so exact multiples do not emit the far corner.
    auto count = static_cast<std::size_t>(std::ceil(e.len / step - 1e-9));
    count = std::max<std::size_t>(count, 1);
    for (std::size_t k = 0; k < count; ++k) {
      double t = static_cast<double>(k) * step;
      out.points.push_back({e.from.x + e.dx * t, e.from.y + e.dy * t});
    }
  }
  return out;
}

// Exact distance from p to the boundary of `storage` (the curve, not the
// filled region). For points on or outside the rectangle this is the usual
// clamp distance; for interior points it is the distance to the nearest edge.
inline double distance_to_storage(const Point& p, const Rect& storage) {
  validate_rect(storage, "distance_to_storage");
  double dx = std::max({storage.min_x - p.x, 0.0, p.x - storage.max_x});
  double dy = std::max({storage.min_y - p.y, 0.0, p.y - storage.max_y});
  if (dx > 0 || dy > 0) return std::hypot(dx, dy);
  // Inside (or on the edge): nearest of the four edges.
  return std::min({p.x - storage.min_x, storage.max_x - p.x, p.y - storage.min_y,
                   storage.max_y - p.y});
}

}  // namespace jamsched
