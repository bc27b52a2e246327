#include "wsan/fire.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wsan::fire {

double fire_radius(const FireState& f, double t) {
  if (t < f.event.t0) return 0.0;
  const double until = f.contained_at ? std::min(t, *f.contained_at) : t;
  return f.event.speed * std::max(0.0, until - f.event.t0);
}

std::optional<double> first_detection_time(const FireEvent& f, geometry::Point sensor, double range) {
  const double gap = geometry::distance(sensor, f.ignition) - range;
  if (gap <= 0.0) return f.t0;
  if (f.speed <= 0.0) return std::nullopt;
  return f.t0 + gap / f.speed;
}

namespace {

// Antiderivative of sqrt(r^2 - x^2) on [-r, r].
double half_disk_primitive(double x, double r) {
  const double u = std::clamp(x / r, -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, r * r - x * x));
  return 0.5 * (x * s + r * r * std::asin(u));
}

}  // namespace

double disk_rect_intersection_area(geometry::Point centre, double radius, const geometry::Rect& rect) {
  if (!(radius > 0.0)) return 0.0;
  const double r = radius;
  // Work in disk-centred coordinates.
  const double x0 = rect.min.x - centre.x;
  const double x1 = rect.max.x - centre.x;
  const double y0 = rect.min.y - centre.y;
  const double y1 = rect.max.y - centre.y;

  const double a = std::max(x0, -r);
  const double b = std::min(x1, r);
  if (a >= b || y0 >= r || y1 <= -r) return 0.0;

  // Over [a, b] the integrand is min(y1, s(x)) - max(y0, -s(x)) clipped at 0,
  // with s(x) = sqrt(r^2 - x^2). Its pieces change only where s(x) = |y0| or |y1|.
  std::vector<double> cuts{a, b};
  for (double y : {y0, y1}) {
    if (std::abs(y) < r) {
      const double w = std::sqrt(r * r - y * y);
      for (double c : {-w, w}) {
        if (c > a && c < b) cuts.push_back(c);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());

  double area = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi);
    const double s_mid = std::sqrt(std::max(0.0, r * r - mid * mid));
    const bool top_is_arc = s_mid < y1;
    const bool bottom_is_arc = -s_mid > y0;
    const double top_mid = top_is_arc ? s_mid : y1;
    const double bottom_mid = bottom_is_arc ? -s_mid : y0;
    if (top_mid <= bottom_mid) continue;

    const double arc = half_disk_primitive(hi, r) - half_disk_primitive(lo, r);
    const double width = hi - lo;
    const double top = top_is_arc ? arc : y1 * width;
    const double bottom = bottom_is_arc ? -arc : y0 * width;
    area += top - bottom;
  }
  return std::max(0.0, area);
}

double burned_area(const FireState& f, double t, const geometry::GridSpec& spec) {
  return disk_rect_intersection_area(f.event.ignition, fire_radius(f, t), spec.area());
}

}  // namespace wsan::fire
