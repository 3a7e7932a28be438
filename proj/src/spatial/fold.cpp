#include "augview/spatial/fold.hpp"

#include <cmath>

#include "augview/common/error.hpp"

namespace augview::spatial {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= kAdjacencyEpsilon; }

bool intervals_overlap(double a0, double a1, double b0, double b1) {
  return std::min(a1, b1) - std::max(a0, b0) > kAdjacencyEpsilon;
}

}  // namespace

OrientedRect planar(const Rect& r) {
  return {{r.x, r.y, 0.0}, {r.w, 0.0, 0.0}, {0.0, r.h, 0.0}};
}

OrientedRect fold_plane(const Rect& vis, const OrientedRect& zone) {
  for (const auto& c : zone.corners()) {
    if (std::abs(c.z) > kAdjacencyEpsilon) {
      throw Error(ErrorCode::kNonAdjacentRect, "zone rectangle is not on the screen plane (already folded?)");
    }
  }
  const bool axis_aligned = (near(zone.edge_u.y, 0.0) && near(zone.edge_v.x, 0.0)) ||
                            (near(zone.edge_u.x, 0.0) && near(zone.edge_v.y, 0.0));
  if (!axis_aligned || zone.area() <= 0.0) {
    throw Error(ErrorCode::kNonAdjacentRect, "zone rectangle must be axis aligned with positive area");
  }
  const Aabb b = zone.bounds();
  const double x0 = b.lo.x, x1 = b.hi.x, y0 = b.lo.y, y1 = b.hi.y;
  const double depth_y = y1 - y0;
  const double depth_x = x1 - x0;

  if (intervals_overlap(x0, x1, vis.x, vis.right())) {
    if (near(y1, vis.y)) {  // below the visualization
      return {{x0, y1, 0.0}, {depth_x, 0.0, 0.0}, {0.0, 0.0, depth_y}};
    }
    if (near(y0, vis.top())) {  // above
      return {{x0, y0, 0.0}, {depth_x, 0.0, 0.0}, {0.0, 0.0, depth_y}};
    }
  }
  if (intervals_overlap(y0, y1, vis.y, vis.top())) {
    if (near(x1, vis.x)) {  // left of the visualization
      return {{x1, y0, 0.0}, {0.0, depth_y, 0.0}, {0.0, 0.0, depth_x}};
    }
    if (near(x0, vis.right())) {  // right
      return {{x0, y0, 0.0}, {0.0, depth_y, 0.0}, {0.0, 0.0, depth_x}};
    }
  }
  throw Error(ErrorCode::kNonAdjacentRect, "zone rectangle shares no edge with the visualization");
}

json to_json(const OrientedRect& r) {
  return json{{"origin", {r.origin.x, r.origin.y, r.origin.z}},
              {"edge_u", {r.edge_u.x, r.edge_u.y, r.edge_u.z}},
              {"edge_v", {r.edge_v.x, r.edge_v.y, r.edge_v.z}}};
}

}  // namespace augview::spatial
