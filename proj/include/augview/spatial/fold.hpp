#pragma once

#include <array>

#include "augview/common/canonical_json.hpp"
#include "augview/common/geometry.hpp"

namespace augview::spatial {

// Parallelogram spanned from `origin` by two edge vectors (rectangles in practice).
struct OrientedRect {
  Vec3 origin;
  Vec3 edge_u;
  Vec3 edge_v;

  std::array<Vec3, 4> corners() const {
    return {origin, origin + edge_u, origin + edge_u + edge_v, origin + edge_v};
  }
  double area() const { return edge_u.cross(edge_v).norm(); }
  Vec3 at(double u, double v) const { return origin + edge_u * u + edge_v * v; }
  Aabb bounds() const {
    const auto c = corners();
    return Aabb::of({c[0], c[1], c[2], c[3]});
  }
};

// Axis-aligned rectangle on the screen plane.
OrientedRect planar(const Rect& world_rect);

// Tolerance for edge coincidence, meters.
inline constexpr double kAdjacencyEpsilon = 1e-9;

// Rotates a planar zone rectangle by 90 degrees about the edge it shares with
// the visualization rectangle (both on the z = 0 plane, meters) so that it
// extends toward the analyst (+z). The result has `origin` and `edge_u` on the
// hinge and `edge_v` = (0, 0, depth of the zone).
// Throws Error(kNonAdjacentRect) when no edge is shared or the zone is not a
// planar, axis-aligned rectangle (folding an already folded zone is rejected).
OrientedRect fold_plane(const Rect& vis_rect, const OrientedRect& zone_rect);

json to_json(const OrientedRect& r);

}  // namespace augview::spatial
