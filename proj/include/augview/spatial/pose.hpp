#pragma once

#include <string>

#include "augview/common/canonical_json.hpp"
#include "augview/common/geometry.hpp"
#include "augview/spatial/display.hpp"

namespace augview::spatial {

struct Pose {
  std::string user;
  Vec3 position{0.0, 1.2, 2.0};  // world meters, z > 0 in front of the screen
  Vec3 facing{0.0, 0.0, -1.0};   // unit vector

  friend bool operator==(const Pose&, const Pose&) = default;
};

// Returns a unit vector; zero or non-finite input falls back to facing the screen.
Vec3 normalized_facing(Vec3 facing);

enum class Side { kLeft, kRight };
std::string_view to_string(Side side);

struct ProxemicReport {
  Side preferred = Side::kRight;
  double to_left = 0.0;    // horizontal distance to the left display edge
  double to_right = 0.0;
  double to_bottom = 0.0;  // vertical distance to the bottom edge
  double to_top = 0.0;
  double to_plane = 0.0;   // distance to the screen plane
};

// Side whose display edge is horizontally nearer; an exact tie resolves to right.
ProxemicReport proxemic_side(const Pose& pose, const DisplayConfig& cfg);

json to_json(const Pose& pose);
// Reads the fields as written; callers normalize `facing` where required.
Pose pose_from_json(const json& j);

}  // namespace augview::spatial
