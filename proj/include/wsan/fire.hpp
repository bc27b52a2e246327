#pragma once

#include <cstdint>
#include <optional>

#include "wsan/geometry.hpp"

namespace wsan::fire {

using FireId = std::uint32_t;

// A disk-shaped front growing at constant speed from its ignition point.
struct FireEvent {
  FireId fire_id = 0;
  geometry::Point ignition;
  double speed = 0.0;  // m/s
  double t0 = 0.0;
};

struct FireState {
  FireEvent event;
  std::optional<double> contained_at;

  bool ignited(double t) const { return t >= event.t0; }
  bool contained() const { return contained_at.has_value(); }
};

// 0 before ignition, v * (min(t, contained_at) - t0) afterwards.
double fire_radius(const FireState& f, double t);

// Earliest time at which the front comes within `range` of `sensor`, ignoring
// containment. std::nullopt when the fire never gets there.
std::optional<double> first_detection_time(const FireEvent& f, geometry::Point sensor, double range);

// Area of the intersection of the disk (centre, radius) with `rect`, exact.
double disk_rect_intersection_area(geometry::Point centre, double radius, const geometry::Rect& rect);

// Burned area at t, clipped to the simulation area.
double burned_area(const FireState& f, double t, const geometry::GridSpec& spec);

}  // namespace wsan::fire
