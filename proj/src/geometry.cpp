#include "wsan/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wsan/error.hpp"

namespace wsan::geometry {

double distance(Point a, Point b) { return actor_travel_distance(b.x - a.x, b.y - a.y); }

GridSpec GridSpec::make(int n, double r) {
  if (n < 2) {
    throw Error(ErrorKind::kInvalidSpec, "grid n must be at least 2, got " + std::to_string(n));
  }
  if (n % 2 != 0) {
    throw Error(ErrorKind::kInvalidSpec,
                "grid n must be even so the area splits into four equal quadrants, got " +
                    std::to_string(n));
  }
  derive_cell_side(r);
  return GridSpec(n, r);
}

double derive_cell_side(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::kInvalidSpec, "sensing range must be positive and finite");
  }
  return 2.0 * r;
}

std::int64_t node_count_center(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::kInvalidSpec, "n must be >= 1");
  return n * n;
}

std::int64_t node_count_intersection(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::kInvalidSpec, "n must be >= 1");
  return n * n + 2 * n + 1;
}

std::vector<Quadrant> quadrants(const GridSpec& spec) {
  const double m = spec.midline();
  const double e = spec.extent();
  std::vector<Quadrant> out;
  out.reserve(kQuadrantCount);
  for (QuadrantNo q = 0; q < kQuadrantCount; ++q) {
    const bool east = (q & 1) != 0;
    const bool north = (q & 2) != 0;
    out.push_back({q, {{east ? m : 0.0, north ? m : 0.0}, {east ? e : m, north ? e : m}}});
  }
  return out;
}

Deployment plan_deployment(const GridSpec& spec) {
  Deployment d{spec, {}, {}, {}};
  const int n = spec.n();
  const double cell = spec.cell_side();

  d.sensors.reserve(static_cast<std::size_t>(node_count_center(n)));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point p{(i + 0.5) * cell, (j + 0.5) * cell};
      d.sensors.push_back({static_cast<std::uint32_t>(j * n + i), p, quadrant_of(p, spec)});
    }
  }

  for (const Quadrant& q : quadrants(spec)) {
    const bool east = (q.qno & 1) != 0;
    const bool north = (q.qno & 2) != 0;
    const Point corner{east ? q.bounds.max.x : q.bounds.min.x, north ? q.bounds.max.y : q.bounds.min.y};
    const Point centre{(q.bounds.min.x + q.bounds.max.x) / 2.0, (q.bounds.min.y + q.bounds.max.y) / 2.0};
    d.cluster_heads.push_back({q.qno, corner});
    d.actors.push_back({q.qno, centre});
  }
  return d;
}

QuadrantNo quadrant_of(Point p, const GridSpec& spec) {
  if (!spec.in_area(p)) {
    throw Error(ErrorKind::kOutOfBounds,
                "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is outside the area");
  }
  const double m = spec.midline();
  return static_cast<QuadrantNo>((p.x >= m ? 1 : 0) + 2 * (p.y >= m ? 1 : 0));
}

double actor_travel_distance(double b, double c) {
  // The cross term 2bc*cos(90) of the law of cosines vanishes.
  return std::sqrt(b * b + c * c);
}

double actor_heading(double dx, double dy) {
  if (dx == 0.0 && dy == 0.0) {
    throw Error(ErrorKind::kUndefinedHeading, "zero displacement has no heading");
  }
  const double heading = std::atan2(dy, dx);
  // atan2(-0.0, x < 0) yields -pi; fold it onto the closed end of the range.
  return heading == -std::numbers::pi ? std::numbers::pi : heading;
}

}  // namespace wsan::geometry
