#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "augview/common/canonical_json.hpp"
#include "augview/common/geometry.hpp"

namespace augview::spatial {

// Physical display. The world frame is anchored at the display's lower-left
// corner: x to the right along the screen, y up, z toward the analyst, meters.
// Pixel coordinates share the anchor (y grows upward).
struct DisplayConfig {
  std::string name;
  int width_px = 0;
  int height_px = 0;
  double width_m = 0.0;
  double height_m = 0.0;

  double meters_per_px_x() const { return width_m / width_px; }
  double meters_per_px_y() const { return height_m / height_px; }
};

DisplayConfig surface_hub_84();  // 3840x2160 px, 1.872x1.053 m
DisplayConfig display_wall();    // 7680x3240 px, 4.86x2.06 m
std::optional<DisplayConfig> display_preset(std::string_view name);

// Throws Error(kConfigError) on non-positive extents.
void validate(const DisplayConfig& cfg);

Vec3 display_to_world(Vec2 pixel, const DisplayConfig& cfg);
// Inverse of display_to_world; the z component is dropped.
Vec2 world_to_display(Vec3 world, const DisplayConfig& cfg);
// Pixel rectangle to the world-space rectangle it covers on the z = 0 plane.
Rect display_rect_to_world(const Rect& pixels, const DisplayConfig& cfg);

json to_json(const DisplayConfig& cfg);
// Accepts {"preset": name} or explicit fields.
DisplayConfig display_from_json(const json& j);

}  // namespace augview::spatial
