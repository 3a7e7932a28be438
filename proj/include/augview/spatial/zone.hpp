#pragma once

#include <compare>
#include <string>
#include <vector>

#include "augview/common/geometry.hpp"
#include "augview/spatial/display.hpp"

namespace augview::spatial {

enum class Horizontal { kLeft, kCenter, kRight };
enum class Vertical { kBottom, kMiddle, kTop };
enum class Depth { kBehind, kCoincident, kFront };

// One of the 27 cells around the display: the nine planar zones of the screen
// plane, each extended behind and in front of it.
struct Zone {
  Horizontal horizontal = Horizontal::kCenter;
  Vertical vertical = Vertical::kMiddle;
  Depth depth = Depth::kCoincident;

  int index() const {
    return static_cast<int>(horizontal) * 9 + static_cast<int>(vertical) * 3 + static_cast<int>(depth);
  }
  friend auto operator<=>(const Zone&, const Zone&) = default;
};

// Content within this distance of the screen plane counts as on the screen.
inline constexpr double kCoincidenceTolerance = 0.01;

// Half-open rule per axis: x < 0 left, 0 <= x <= W center, x > W right (same
// for y with H); |z| <= tolerance coincident, z > tolerance front, else behind.
Zone classify_zone(Vec3 p, const DisplayConfig& cfg);

// Zones whose cells intersect the box, sorted by index.
std::vector<Zone> zones_of_box(const Aabb& box, const DisplayConfig& cfg);

std::string to_string(const Zone& z);  // e.g. "left/middle/coincident"
Zone zone_from_string(const std::string& s);

}  // namespace augview::spatial
