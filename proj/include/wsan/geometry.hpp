#pragma once

#include <cstdint>
#include <vector>

namespace wsan::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

// Half-open rectangle [min.x, max.x) x [min.y, max.y).
struct Rect {
  Point min;
  Point max;

  bool contains(Point p) const { return p.x >= min.x && p.x < max.x && p.y >= min.y && p.y < max.y; }
  double area() const { return (max.x - min.x) * (max.y - min.y); }

  friend bool operator==(const Rect&, const Rect&) = default;
};

using QuadrantNo = std::uint16_t;
inline constexpr int kQuadrantCount = 4;

// n x n square cells of side D = 2r, origin at the south-west corner.
class GridSpec {
 public:
  // Throws Error(kInvalidSpec) unless n >= 2, n even and r > 0.
  static GridSpec make(int n, double r);

  int n() const { return n_; }
  double sensing_range() const { return r_; }
  double cell_side() const { return 2.0 * r_; }
  double extent() const { return n_ * cell_side(); }
  double midline() const { return extent() / 2.0; }
  Rect area() const { return {{0.0, 0.0}, {extent(), extent()}}; }
  bool in_area(Point p) const { return area().contains(p); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  GridSpec(int n, double r) : n_(n), r_(r) {}

  int n_;
  double r_;
};

struct Quadrant {
  QuadrantNo qno;
  Rect bounds;
};

struct SensorSite {
  std::uint32_t id;
  Point position;
  QuadrantNo chno;  // cluster head serving this sensor's quadrant
};

struct ClusterHeadSite {
  std::uint16_t chno;
  Point position;
};

struct ActorSite {
  std::uint16_t aa;
  Point home;
};

struct Deployment {
  GridSpec spec;
  std::vector<SensorSite> sensors;
  std::vector<ClusterHeadSite> cluster_heads;
  std::vector<ActorSite> actors;
};

double derive_cell_side(double r);
std::int64_t node_count_center(std::int64_t n);
std::int64_t node_count_intersection(std::int64_t n);

std::vector<Quadrant> quadrants(const GridSpec& spec);

// Sensors at every cell centre (row-major from the south edge), one cluster
// head at the outer area corner of each quadrant, one actor at each quadrant
// centre. CHNO and AA both equal the quadrant number.
Deployment plan_deployment(const GridSpec& spec);

// qno = x-bit + 2 * y-bit, where a coordinate on the midline belongs to the
// upper half. Throws Error(kOutOfBounds) outside [0, nD) x [0, nD).
QuadrantNo quadrant_of(Point p, const GridSpec& spec);

double actor_travel_distance(double b, double c);

// Full-circle heading in (-pi, pi]. Throws Error(kUndefinedHeading) for (0, 0).
double actor_heading(double dx, double dy);

}  // namespace wsan::geometry
