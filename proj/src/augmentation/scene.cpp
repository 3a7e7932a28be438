#include "augview/augmentation/scene.hpp"

#include <algorithm>
#include <tuple>
#include <type_traits>

namespace augview::augmentation {

namespace {

json vec(Vec3 p) { return json::array({p.x, p.y, p.z}); }

json points(const std::vector<Vec3>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(vec(p));
  return out;
}

json marks_json(const std::shared_ptr<const vis::MarkSet>& marks) {
  return marks ? vis::to_json(*marks) : json(nullptr);
}

json payload_json(const NodePayload& payload) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, EmbeddedPayload>) {
          json segs = json::array();
          for (const auto& s : p.segments)
            segs.push_back({{"category", s.category}, {"count", s.count}, {"z0", s.z0}, {"depth", s.depth}});
          json out{{"mark", p.mark},   {"shape", p.cylinder ? "cylinder" : "cuboid"},
                   {"dimension", p.dimension}, {"segments", std::move(segs)}};
          if (p.cylinder) out["radius_m"] = p.radius_m;
          else {
            out["width_m"] = p.width_m;
            out["height_m"] = p.height_m;
          }
          return out;
        } else if constexpr (std::is_same_v<T, HingedPayload>) {
          return {{"angle_deg", p.angle_deg},   {"hinge", spatial::to_string(p.hinge)},
                  {"distance_m", p.distance_m}, {"width_m", p.width_m},
                  {"height_m", p.height_m},     {"toggled", p.toggled},
                  {"marks", marks_json(p.marks)}, {"highlighted", p.highlighted}};
        } else if constexpr (std::is_same_v<T, CurvedPanelPayload>) {
          return {{"side", spatial::to_string(p.side)}, {"kappa", p.kappa}, {"tangent_x", p.tangent_x},
                  {"span_m", p.span_m}, {"height_m", p.height_m}, {"arc", points(p.arc)}};
        } else if constexpr (std::is_same_v<T, LinkPayload>) {
          return {{"from", {{"vis", p.from_vis}, {"mark", p.from_mark}}},
                  {"to", {{"vis", p.to_vis}, {"mark", p.to_mark}}},
                  {"control", points({p.curve.control.begin(), p.curve.control.end()})},
                  {"rows", p.rows},
                  {"length_m", p.length_m}};
        } else if constexpr (std::is_same_v<T, AxisPayload>) {
          json bars = json::array();
          for (const auto& b : p.bars) bars.push_back({b[0], b[1], b[2]});
          return {{"side", vis::to_string(p.side)}, {"column", p.column}, {"folded", p.folded},
                  {"plane", spatial::to_json(p.plane)}, {"histogram", data::to_json(p.histogram)},
                  {"bars", std::move(bars)}};
        } else if constexpr (std::is_same_v<T, LayerPayload>) {
          return {{"layer", p.layer},     {"active", p.active},     {"opacity", p.opacity},
                  {"width_m", p.width_m}, {"height_m", p.height_m}, {"filter", data::to_json(p.filter)},
                  {"marks", marks_json(p.marks)}};
        } else if constexpr (std::is_same_v<T, LensRingPayload>) {
          return {{"radius_m", p.radius_m}, {"radius_px", p.radius_px}, {"mode", p.mode},
                  {"marks_inside", p.marks_inside}};
        } else if constexpr (std::is_same_v<T, LensMarkPayload>) {
          return {{"mark", p.mark}, {"visible", p.visible}, {"color", p.color}, {"level", p.level}};
        } else {
          return {{"stroke", p.stroke_id}, {"color", p.color}, {"shared", p.shared}, {"points", points(p.points)}};
        }
      },
      payload);
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kCurvedPanel: return "curved_panel";
    case NodeKind::kHingedVis: return "hinged_vis";
    case NodeKind::kVisLayer: return "vis_layer";
    case NodeKind::kAxisView: return "axis_view";
    case NodeKind::kEmbeddedVis: return "embedded_vis";
    case NodeKind::kLens: return "lens";
    case NodeKind::kLinkCurve: return "link_curve";
    case NodeKind::kAnnotation: return "annotation";
  }
  return "embedded_vis";
}

int precedence(NodeKind kind) { return static_cast<int>(kind); }

std::size_t ARScene::count(NodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [kind](const AugmentationNode& n) { return n.kind == kind; }));
}

void finish_node(AugmentationNode& node, const spatial::DisplayConfig& cfg) {
  node.bounds = Aabb{};
  for (const auto& p : node.extent) node.bounds.expand(p);
  if (node.bounds.empty()) node.bounds.expand(node.transform.position);
  node.zones = spatial::zones_of_box(node.bounds, cfg);
}

void order_nodes(std::vector<AugmentationNode>& nodes) {
  std::stable_sort(nodes.begin(), nodes.end(), [](const AugmentationNode& a, const AugmentationNode& b) {
    return std::forward_as_tuple(precedence(a.kind), a.vis_id, a.id) <
           std::forward_as_tuple(precedence(b.kind), b.vis_id, b.id);
  });
}

json to_json(const AugmentationNode& node) {
  json zones = json::array();
  for (const auto& z : node.zones) zones.push_back(spatial::to_string(z));
  const auto& t = node.transform;
  return json{{"id", node.id},
              {"kind", to_string(node.kind)},
              {"owner", node.owner},
              {"vis", node.vis_id},
              {"transform", {{"position", vec(t.position)}, {"u", vec(t.u)}, {"v", vec(t.v)}, {"n", vec(t.n)}}},
              {"bounds", {{"min", vec(node.bounds.lo)}, {"max", vec(node.bounds.hi)}}},
              {"zones", std::move(zones)},
              {"payload", payload_json(node.payload)}};
}

json to_json(const ARScene& scene) {
  json nodes = json::array();
  for (const auto& n : scene.nodes) nodes.push_back(to_json(n));
  return json{{"viewer", scene.viewer}, {"seq", scene.seq}, {"nodes", std::move(nodes)},
              {"warnings", scene.warnings}};
}

}  // namespace augview::augmentation
