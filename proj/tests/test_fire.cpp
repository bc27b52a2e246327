#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wsan/fire.hpp"

using namespace wsan;
using namespace wsan::fire;
using geometry::Point;

namespace {

// Step time forward until the front reaches the sensing disk.
std::optional<double> stepped_detection(const FireEvent& f, Point sensor, double range, double dt, double limit) {
  const FireState s{f, std::nullopt};
  for (double t = f.t0; t <= limit; t += dt) {
    if (geometry::distance(sensor, f.ignition) - fire_radius(s, t) <= range) return t;
  }
  return std::nullopt;
}

// Midpoint-rule integral of the clipped chord length over x.
double quadrature_area(Point c, double radius, const geometry::Rect& rect, int strips) {
  const double lo = std::max(rect.min.x, c.x - radius);
  const double hi = std::min(rect.max.x, c.x + radius);
  if (hi <= lo) return 0.0;
  const double h = (hi - lo) / strips;
  double area = 0.0;
  for (int i = 0; i < strips; ++i) {
    const double x = lo + (i + 0.5) * h;
    const double half = std::sqrt(std::max(0.0, radius * radius - (x - c.x) * (x - c.x)));
    const double top = std::min(rect.max.y, c.y + half);
    const double bottom = std::max(rect.min.y, c.y - half);
    area += std::max(0.0, top - bottom) * h;
  }
  return area;
}

}  // namespace

TEST_CASE("radius grows linearly and freezes at containment") {
  FireState f{{0, {100, 100}, 1.0, 5.0}, std::nullopt};
  CHECK(fire_radius(f, 15.0) == 10.0);
  CHECK(fire_radius(f, 4.0) == 0.0);
  CHECK(fire_radius(f, 5.0) == 0.0);

  FireState g{{1, {0, 0}, 2.0, 0.0}, 50.0};
  CHECK(fire_radius(g, 80.0) == 100.0);
  CHECK(fire_radius(g, 50.0) == 100.0);
  CHECK(fire_radius(g, 25.0) == 50.0);
}

TEST_CASE("radius is monotone and constant after containment") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    FireState f{{0, {0, 0}, u(rng) / 10, u(rng)}, std::nullopt};
    if (i % 2 == 0) f.contained_at = f.event.t0 + u(rng);
    double t1 = u(rng) * 2;
    double t2 = u(rng) * 2;
    if (t1 > t2) std::swap(t1, t2);
    CHECK(fire_radius(f, t1) <= fire_radius(f, t2));
    if (f.contained_at && t1 >= *f.contained_at) CHECK(fire_radius(f, t1) == fire_radius(f, t2));
  }
}

TEST_CASE("first detection time") {
  const FireEvent at_sensor{0, {50, 50}, 1.0, 3.0};
  CHECK(first_detection_time(at_sensor, {50, 50}, 50) == 3.0);

  const FireEvent far{0, {200, 50}, 1.0, 0.0};
  const auto t = first_detection_time(far, {50, 50}, 50);
  REQUIRE(t);
  CHECK(*t == 100.0);
  const auto stepped = stepped_detection(far, {50, 50}, 50, 1e-3, 200);
  REQUIRE(stepped);
  CHECK(std::abs(*stepped - *t) <= 1e-3 + 1e-9);

  const FireEvent stat{0, {110, 50}, 0.0, 0.0};
  CHECK_FALSE(first_detection_time(stat, {50, 50}, 50).has_value());
  const FireEvent stat_near{0, {90, 50}, 0.0, 7.0};
  CHECK(first_detection_time(stat_near, {50, 50}, 50) == 7.0);
}

TEST_CASE("first detection time agrees with stepping on random pairs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(0.0, 400.0);
  std::uniform_real_distribution<double> speed(0.5, 3.0);
  for (int i = 0; i < 100; ++i) {
    const FireEvent f{0, {pos(rng), pos(rng)}, speed(rng), pos(rng) / 10};
    const Point s{pos(rng), pos(rng)};
    const auto t = first_detection_time(f, s, 30);
    const auto stepped = stepped_detection(f, s, 30, 1e-2, 2000);
    REQUIRE(t);
    REQUIRE(stepped);
    CHECK(std::abs(*stepped - *t) <= 1e-2 + 1e-9);
  }
}

TEST_CASE("burned area") {
  const auto spec = geometry::GridSpec::make(4, 50);
  FireState none{{0, {200, 200}, 1.0, 0.0}, std::nullopt};
  CHECK(burned_area(none, 0.0, spec) == 0.0);

  FireState small{{0, {200, 200}, 1.0, 0.0}, std::nullopt};
  CHECK(burned_area(small, 10.0, spec) == doctest::Approx(100 * std::numbers::pi).epsilon(1e-12));

  FireState huge{{0, {10, 390}, 1.0, 0.0}, std::nullopt};
  CHECK(burned_area(huge, 1000.0, spec) == doctest::Approx(400.0 * 400.0).epsilon(1e-12));

  // Half disk on an edge, quarter disk in a corner.
  FireState edge{{0, {200, 0}, 1.0, 0.0}, std::nullopt};
  CHECK(burned_area(edge, 50.0, spec) == doctest::Approx(2500 * std::numbers::pi / 2).epsilon(1e-12));
  FireState corner{{0, {0, 0}, 1.0, 0.0}, std::nullopt};
  CHECK(burned_area(corner, 50.0, spec) == doctest::Approx(2500 * std::numbers::pi / 4).epsilon(1e-12));
}

TEST_CASE("exact clipped area matches quadrature") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-50.0, 450.0);
  std::uniform_real_distribution<double> rad(1.0, 400.0);
  const geometry::Rect rect{{0, 0}, {400, 400}};
  for (int i = 0; i < 200; ++i) {
    const Point c{u(rng), u(rng)};
    const double r = rad(rng);
    const double exact = disk_rect_intersection_area(c, r, rect);
    const double approx = quadrature_area(c, r, rect, 20000);
    CHECK(exact == doctest::Approx(approx).epsilon(1e-4).scale(1.0));
  }
}

TEST_CASE("burned area is non-decreasing and bounded") {
  const auto spec = geometry::GridSpec::make(6, 20);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pos(0.0, 239.0);
  for (int i = 0; i < 50; ++i) {
    FireState f{{0, {pos(rng), pos(rng)}, 1.3, 2.0}, std::nullopt};
    if (i % 3 == 0) f.contained_at = 90.0;
    double prev = 0.0;
    for (double t = 0; t < 400; t += 7.5) {
      const double a = burned_area(f, t, spec);
      CHECK(a >= prev - 1e-9);
      CHECK(a <= spec.area().area() * (1 + 1e-12));
      prev = a;
    }
  }
}
