#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "augview/augmentation/params.hpp"
#include "augview/common/geometry.hpp"
#include "augview/data/aggregate.hpp"
#include "augview/spatial/display.hpp"
#include "augview/spatial/pose.hpp"

namespace augview::augmentation {

// Tilt of a hinged panel in degrees: 90 * clamp((d - d_near) / (d_far - d_near), 0, 1).
// Throws Error(kBadParams) unless d_near < d_far.
double hinge_angle(double d, double d_near, double d_far);
double hinge_angle(double d, const AugmentationParams& p);

struct BezierCurve {
  std::array<Vec3, 4> control;

  Vec3 at(double t) const;
};

// Cubic link between two world points; the inner controls sit at 1/3 and 2/3
// of the chord, raised by clamp(link_lift * length, link_min_height, link_max_height).
// Throws Error(kDegenerateLink) when p0 == p1.
BezierCurve bezier_link(Vec3 p0, Vec3 p1, const AugmentationParams& p);

// Horizontal bending of the screen plane around a flat window in front of the
// analyst. Content right of the window wraps onto a circular arc of curvature
// kappa_right tangent to the screen at window_hi (mirrored on the left), so
// distances along the screen are preserved along the arc.
struct CurvedScreen {
  double window_lo = 0.0;
  double window_hi = 0.0;
  double kappa_left = 0.0;
  double kappa_right = 0.0;

  bool in_window(double x) const { return x >= window_lo && x <= window_hi; }
  // Maps a point given in screen coordinates (z = offset along the screen normal).
  Vec3 map(Vec3 p) const;
  // Rotates a direction attached to screen position x along with the surface.
  Vec3 rotate(Vec3 dir, double x) const;
};

CurvedScreen curved_screen_for(const spatial::Pose& viewer, const spatial::DisplayConfig& cfg,
                               const AugmentationParams& p);

struct EmbedSegment {
  std::string category;
  std::uint64_t count = 0;
  double z0 = 0.0;
  double depth = 0.0;
};

// Splits `total_depth` proportionally to the counts, stacked from z = 0 in the given order.
std::vector<EmbedSegment> embed_segments(const data::CategoryCounts& counts, double total_depth);

}  // namespace augview::augmentation
