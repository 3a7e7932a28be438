#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "augview/augmentation/techniques.hpp"
#include "augview/common/canonical_json.hpp"
#include "augview/common/geometry.hpp"
#include "augview/data/aggregate.hpp"
#include "augview/data/filter.hpp"
#include "augview/spatial/fold.hpp"
#include "augview/spatial/zone.hpp"
#include "augview/vis/marks.hpp"

namespace augview::augmentation {

// Listed in render precedence.
enum class NodeKind { kCurvedPanel, kHingedVis, kVisLayer, kAxisView, kEmbeddedVis, kLens, kLinkCurve, kAnnotation };

std::string_view to_string(NodeKind kind);
int precedence(NodeKind kind);

// Position plus an orthonormal basis (u along the content's x, v along its y, n its normal).
struct Transform {
  Vec3 position;
  Vec3 u{1.0, 0.0, 0.0};
  Vec3 v{0.0, 1.0, 0.0};
  Vec3 n{0.0, 0.0, 1.0};
};

struct EmbeddedPayload {
  std::uint32_t mark = 0;
  bool cylinder = false;
  double width_m = 0.0;   // cuboid footprint
  double height_m = 0.0;
  double radius_m = 0.0;  // cylinder footprint
  std::string dimension;
  std::vector<EmbedSegment> segments;
};

struct HingedPayload {
  double angle_deg = 0.0;
  spatial::Side hinge = spatial::Side::kRight;
  double distance_m = 0.0;
  double width_m = 0.0;
  double height_m = 0.0;
  bool toggled = false;
  std::shared_ptr<const vis::MarkSet> marks;
  std::vector<std::uint32_t> highlighted;
};

struct CurvedPanelPayload {
  spatial::Side side = spatial::Side::kRight;
  double kappa = 0.0;
  double tangent_x = 0.0;  // window boundary where the arc leaves the screen
  double span_m = 0.0;     // screen length wrapped onto the arc
  double height_m = 0.0;
  std::vector<Vec3> arc;   // samples along the bottom edge
};

struct LinkPayload {
  std::string from_vis;
  std::uint32_t from_mark = 0;
  std::string to_vis;
  std::uint32_t to_mark = 0;
  BezierCurve curve;
  std::vector<vis::RowId> rows;  // selected rows shared by both marks
  double length_m = 0.0;
};

struct AxisPayload {
  vis::AxisSide side = vis::AxisSide::kLeft;
  std::string column;
  bool folded = false;
  spatial::OrientedRect plane;  // edge_u runs along the axis, edge_v away from the chart
  data::Histogram histogram;
  // Per bin: start and end along edge_u (0..1) and bar length along edge_v (0..1).
  std::vector<std::array<double, 3>> bars;
};

struct LayerPayload {
  int layer = -1;  // index in the stack; -1 for the displaced original
  bool active = false;
  double opacity = 1.0;
  double width_m = 0.0;
  double height_m = 0.0;
  data::Filter filter;
  std::shared_ptr<const vis::MarkSet> marks;
};

struct LensRingPayload {
  double radius_m = 0.0;
  double radius_px = 0.0;
  std::string mode;
  std::uint32_t marks_inside = 0;
};

struct LensMarkPayload {
  std::uint32_t mark = 0;
  bool visible = true;
  int color = -1;
  int level = 0;
};

struct AnnotationPayload {
  std::string stroke_id;
  std::string color;
  bool shared = false;
  std::vector<Vec3> points;
};

using NodePayload = std::variant<EmbeddedPayload, HingedPayload, CurvedPanelPayload, LinkPayload, AxisPayload,
                                 LayerPayload, LensRingPayload, LensMarkPayload, AnnotationPayload>;

struct AugmentationNode {
  std::string id;
  NodeKind kind = NodeKind::kEmbeddedVis;
  std::string owner;  // user id, or "public"
  std::string vis_id;
  Transform transform;
  NodePayload payload;
  // World points spanning the node; bounds and zones derive from them.
  std::vector<Vec3> extent;
  Aabb bounds;
  std::vector<spatial::Zone> zones;
};

struct ARScene {
  std::string viewer;
  std::uint64_t seq = 0;
  std::vector<AugmentationNode> nodes;
  std::vector<std::string> warnings;

  std::size_t count(NodeKind kind) const;
};

// Recomputes bounds and zones from `extent`.
void finish_node(AugmentationNode& node, const spatial::DisplayConfig& cfg);
// Sorts by (precedence, vis id, node id).
void order_nodes(std::vector<AugmentationNode>& nodes);

json to_json(const AugmentationNode& node);
json to_json(const ARScene& scene);

}  // namespace augview::augmentation
