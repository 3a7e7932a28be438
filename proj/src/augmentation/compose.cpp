#include "augview/augmentation/compose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <type_traits>

#include "augview/common/error.hpp"

namespace augview::augmentation {

namespace {

using session::UserState;
using session::Workspace;

std::string padded(std::uint32_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%05u", n);
  return buf;
}

Vec3 unit(Vec3 v) {
  const double n = v.norm();
  return n > 0.0 ? v * (1.0 / n) : v;
}

Transform basis(Vec3 position, Vec3 u, Vec3 v) {
  const Vec3 nu = unit(u);
  const Vec3 nv = unit(v);
  return {position, nu, nv, nu.cross(nv)};
}

std::vector<Vec3> rect_corners(const Rect& r, double z) {
  return {{r.x, r.y, z}, {r.right(), r.y, z}, {r.right(), r.top(), z}, {r.x, r.top(), z}};
}

Vec3 px_to_world(Vec2 px, const spatial::DisplayConfig& cfg, double z = 0.0) {
  Vec3 p = spatial::display_to_world(px, cfg);
  p.z = z;
  return p;
}

AugmentationNode make_node(std::string id, NodeKind kind, const UserId& owner, std::string vis_id) {
  AugmentationNode n;
  n.id = std::move(id);
  n.kind = kind;
  n.owner = owner;
  n.vis_id = std::move(vis_id);
  return n;
}

// Union of the viewer's selected rows across all charts.
vis::RowSet selected_rows(const UserState& u) {
  vis::RowSet rows;
  for (const auto& [v, sel] : u.selections) rows.insert(sel.begin(), sel.end());
  return rows;
}

std::vector<vis::RowId> intersect(const std::vector<vis::RowId>& a, const vis::RowSet& b) {
  std::vector<vis::RowId> out;
  std::copy_if(a.begin(), a.end(), std::back_inserter(out), [&](vis::RowId r) { return b.contains(r); });
  return out;
}

// Strip of `thickness` meters outside one edge of a world rectangle, with
// edge_u along the edge and edge_v pointing away from the chart.
spatial::OrientedRect edge_strip(const Rect& w, vis::AxisSide side, double t) {
  switch (side) {
    case vis::AxisSide::kLeft: return {{w.x, w.y, 0.0}, {0.0, w.h, 0.0}, {-t, 0.0, 0.0}};
    case vis::AxisSide::kRight: return {{w.right(), w.y, 0.0}, {0.0, w.h, 0.0}, {t, 0.0, 0.0}};
    case vis::AxisSide::kTop: return {{w.x, w.top(), 0.0}, {w.w, 0.0, 0.0}, {0.0, t, 0.0}};
    case vis::AxisSide::kBottom: return {{w.x, w.y, 0.0}, {w.w, 0.0, 0.0}, {0.0, -t, 0.0}};
  }
  return {};
}

Rect strip_rect(const spatial::OrientedRect& s) {
  const Aabb b = s.bounds();
  return {b.lo.x, b.lo.y, b.hi.x - b.lo.x, b.hi.y - b.lo.y};
}

// Another chart lies across the edge within the adjacency threshold.
bool edge_obstructed(const Workspace& ws, const vis::VisSpec& spec, vis::AxisSide side) {
  const Rect& r = spec.view_rect;
  const double limit = ws.params().adjacency_px;
  for (const auto& other : ws.layout().visualizations) {
    if (other.id == spec.id) continue;
    const Rect& o = other.view_rect;
    const bool along_y = o.y < r.top() && r.y < o.top();
    const bool along_x = o.x < r.right() && r.x < o.right();
    double gap = -1.0;
    switch (side) {
      case vis::AxisSide::kLeft: gap = along_y ? r.x - o.right() : -1.0; break;
      case vis::AxisSide::kRight: gap = along_y ? o.x - r.right() : -1.0; break;
      case vis::AxisSide::kBottom: gap = along_x ? r.y - o.top() : -1.0; break;
      case vis::AxisSide::kTop: gap = along_x ? o.y - r.top() : -1.0; break;
    }
    if (gap >= 0.0 && gap <= limit) return true;
  }
  return false;
}

void remap_payload(NodePayload& payload, const CurvedScreen& cs) {
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LinkPayload>) {
          for (auto& c : p.curve.control) c = cs.map(c);
        } else if constexpr (std::is_same_v<T, AnnotationPayload>) {
          for (auto& q : p.points) q = cs.map(q);
        } else if constexpr (std::is_same_v<T, AxisPayload>) {
          const double x = p.plane.origin.x;
          p.plane.origin = cs.map(p.plane.origin);
          p.plane.edge_u = cs.rotate(p.plane.edge_u, x);
          p.plane.edge_v = cs.rotate(p.plane.edge_v, x);
        }
      },
      payload);
}

}  // namespace

std::vector<vis::RowId> embed_rows(const Workspace& ws, const std::string& vis_id, std::uint32_t mark) {
  const auto& spec = ws.vis(vis_id);
  const auto& m = ws.marks(vis_id).marks.at(mark);
  const auto* group = spec.group_column();
  if (group == nullptr || !m.category || (m.geometry.shape != vis::MarkShape::kRect &&
                                          m.geometry.shape != vis::MarkShape::kSector))
    return m.row_ids;
  const auto& col = ws.table().column(*group);
  std::vector<vis::RowId> rows;
  for (vis::RowId r = 0; r < ws.table().row_count(); ++r)
    if (!col.missing(r) && col.text[r] == *m.category) rows.push_back(r);
  return rows;
}

std::string default_embed_dimension(const Workspace& ws, const std::string& vis_id) {
  if (const auto* c = ws.vis(vis_id).binding("color")) return *c;
  for (const auto& col : ws.table().columns())
    if (col.kind == data::DimensionKind::kCategorical) return col.name;
  return {};
}

std::vector<AugmentationNode> embedded_vis_nodes(const SessionState& state, const UserId& viewer,
                                                 std::vector<std::string>* warnings) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& cfg = ws.display();
  std::vector<AugmentationNode> out;
  for (const auto& [vis_id, t] : u.toggles) {
    if (t.embedded_marks.empty()) continue;
    const auto& spec = ws.vis(vis_id);
    const auto& marks = ws.marks(vis_id);
    const double depth = marks.extrusion_depth > 0.0 ? marks.extrusion_depth : ws.params().embed_depth;
    const auto dim = t.embed_dimension.empty() ? default_embed_dimension(ws, vis_id) : t.embed_dimension;
    for (auto idx : t.embedded_marks) {
      const auto& m = marks.marks.at(idx);
      const auto rows = embed_rows(ws, vis_id, idx);
      const vis::RowSet row_set(rows.begin(), rows.end());
      data::CategoryCounts counts;
      if (!dim.empty())
        counts = data::group_count(ws.table(), dim, [&](data::RowId r) { return row_set.contains(r); });
      auto segments = embed_segments(counts, depth);
      if (segments.empty()) {
        if (warnings)
          warnings->push_back("EmptyEmbedData: " + vis_id + " mark " + std::to_string(idx) + " has no values in '" +
                              dim + "'");
        continue;
      }
      EmbeddedPayload p;
      p.mark = idx;
      p.dimension = dim;
      p.segments = std::move(segments);
      const Vec3 anchor = px_to_world(vis::mark_anchor_px(spec, m), cfg);
      auto node = make_node("embed/" + vis_id + "/" + padded(idx), NodeKind::kEmbeddedVis, viewer, vis_id);
      node.transform = {anchor, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
      double hx = 0.0;
      double hy = 0.0;
      if (m.geometry.shape == vis::MarkShape::kRect) {
        p.width_m = m.geometry.rect.w * spec.view_rect.w * cfg.meters_per_px_x();
        p.height_m = m.geometry.rect.h * spec.view_rect.h * cfg.meters_per_px_y();
        hx = p.width_m / 2.0;
        hy = p.height_m / 2.0;
      } else {
        p.cylinder = true;
        p.radius_m = vis::kPointRadiusPx * cfg.meters_per_px_x();
        hx = hy = p.radius_m;
      }
      for (double z : {0.0, depth})
        for (double sx : {-1.0, 1.0})
          for (double sy : {-1.0, 1.0}) node.extent.push_back(anchor + Vec3{sx * hx, sy * hy, z});
      node.payload = std::move(p);
      finish_node(node, cfg);
      out.push_back(std::move(node));
    }
  }
  return out;
}

std::vector<AugmentationNode> hinged_nodes(const SessionState& state, const UserId& viewer) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& cfg = ws.display();
  const auto& params = ws.params();
  std::vector<AugmentationNode> out;
  const Vec3 eye = u.pose.position;
  if (eye.z > params.d_overview) return out;
  const auto selected = selected_rows(u);
  for (const auto& spec : ws.layout().visualizations) {
    const auto t = u.toggles.find(spec.id);
    const bool toggled = t != u.toggles.end() && t->second.hinged;
    auto marks = ws.marks_ptr(spec.id);
    auto highlighted = vis::linked_marks(selected, *marks);
    if (!toggled && highlighted.empty()) continue;
    const Rect w = ws.vis_world_rect(spec.id);
    const double d = distance(eye, {w.center().x, w.center().y, 0.0});
    if (!(d > params.d_near)) continue;

    HingedPayload p;
    p.angle_deg = hinge_angle(d, params);
    p.hinge = std::abs(eye.x - w.x) < std::abs(eye.x - w.right()) ? spatial::Side::kLeft : spatial::Side::kRight;
    p.distance_m = d;
    p.width_m = w.w;
    p.height_m = w.h;
    p.toggled = toggled;
    p.marks = std::move(marks);
    p.highlighted = std::move(highlighted);

    const double a = p.angle_deg * std::acos(-1.0) / 180.0;
    Vec3 origin{w.x, w.y, 0.0};
    Vec3 axis_u{std::cos(a), 0.0, std::sin(a)};
    if (p.hinge == spatial::Side::kRight) {
      axis_u = {std::cos(a), 0.0, -std::sin(a)};
      origin = Vec3{w.right(), w.y, 0.0} - axis_u * w.w;
    }
    auto node = make_node("hinged/" + spec.id, NodeKind::kHingedVis, viewer, spec.id);
    node.transform = basis(origin, axis_u, {0.0, 1.0, 0.0});
    const Vec3 up{0.0, w.h, 0.0};
    node.extent = {origin, origin + axis_u * w.w, origin + axis_u * w.w + up, origin + up};
    node.payload = std::move(p);
    finish_node(node, cfg);
    out.push_back(std::move(node));
  }
  return out;
}

std::vector<AugmentationNode> curved_screen_nodes(const SessionState& state, const UserId& viewer) {
  const auto& u = state.user(viewer);
  std::vector<AugmentationNode> out;
  if (!u.curved_screen) return out;
  const auto& ws = *state.workspace;
  const auto& cfg = ws.display();
  const auto cs = curved_screen_for(u.pose, cfg, ws.params());
  constexpr int kArcSamples = 16;
  const auto panel = [&](spatial::Side side, double from, double to, double kappa, double tangent) {
    CurvedPanelPayload p;
    p.side = side;
    p.kappa = kappa;
    p.tangent_x = tangent;
    p.span_m = to - from;
    p.height_m = cfg.height_m;
    auto node = make_node(std::string("curved/") + std::string(spatial::to_string(side)), NodeKind::kCurvedPanel,
                          viewer, "");
    for (int i = 0; i <= kArcSamples; ++i) {
      const double x = side == spatial::Side::kRight ? tangent + p.span_m * i / kArcSamples
                                                      : tangent - p.span_m * i / kArcSamples;
      const Vec3 q = cs.map({x, 0.0, 0.0});
      p.arc.push_back(q);
      node.extent.push_back(q);
      node.extent.push_back(q + Vec3{0.0, cfg.height_m, 0.0});
    }
    const Vec3 dir = side == spatial::Side::kRight ? Vec3{1.0, 0.0, 0.0} : Vec3{-1.0, 0.0, 0.0};
    node.transform = basis({tangent, 0.0, 0.0}, dir, {0.0, 1.0, 0.0});
    node.payload = std::move(p);
    finish_node(node, cfg);
    out.push_back(std::move(node));
  };
  if (cs.window_lo > 0.0) panel(spatial::Side::kLeft, 0.0, cs.window_lo, cs.kappa_left, cs.window_lo);
  if (cs.window_hi < cfg.width_m) panel(spatial::Side::kRight, cs.window_hi, cfg.width_m, cs.kappa_right, cs.window_hi);
  return out;
}

std::vector<AugmentationNode> link_nodes(const SessionState& state, const UserId& viewer) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& cfg = ws.display();
  const auto& params = ws.params();
  const auto keep = u.link_filter.empty() ? data::accept_all() : data::compile(u.link_filter, ws.table());
  std::vector<AugmentationNode> out;
  for (const auto& [vis_id, selection] : u.selections) {
    const auto& source = ws.marks(vis_id);
    for (auto i : vis::linked_marks(selection, source)) {
      const vis::RowSet rows_i = [&] {
        const auto r = intersect(source.marks[i].row_ids, selection);
        return vis::RowSet(r.begin(), r.end());
      }();
      const Vec3 p0 = ws.mark_world(vis_id, i);
      for (const auto& other : ws.layout().visualizations) {
        if (other.id == vis_id) continue;
        const auto& target = ws.marks(other.id);
        for (auto j : vis::linked_marks(rows_i, target)) {
          auto shared = intersect(target.marks[j].row_ids, rows_i);
          if (std::none_of(shared.begin(), shared.end(), keep)) continue;
          const Vec3 p1 = ws.mark_world(other.id, j);
          if (p0 == p1) continue;
          LinkPayload p{vis_id, i, other.id, j, bezier_link(p0, p1, params), std::move(shared), distance(p0, p1)};
          auto node = make_node("link/" + vis_id + "/" + padded(i) + "/" + other.id + "/" + padded(j),
                                NodeKind::kLinkCurve, viewer, vis_id);
          node.transform = basis(p0, p1 - p0, {0.0, 0.0, 1.0});
          node.transform.v = node.transform.n.cross(node.transform.u);
          for (int k = 0; k <= 16; ++k) node.extent.push_back(p.curve.at(k / 16.0));
          node.payload = std::move(p);
          out.push_back(std::move(node));
        }
      }
    }
  }
  if (out.size() > params.max_links) {
    std::stable_sort(out.begin(), out.end(), [](const AugmentationNode& a, const AugmentationNode& b) {
      return std::get<LinkPayload>(a.payload).length_m < std::get<LinkPayload>(b.payload).length_m;
    });
    out.resize(params.max_links);
  }
  for (auto& n : out) finish_node(n, cfg);
  return out;
}

std::vector<AugmentationNode> extended_axis_nodes(const SessionState& state, const UserId& viewer) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& cfg = ws.display();
  const auto& params = ws.params();
  std::vector<AugmentationNode> out;
  for (const auto& [vis_id, t] : u.toggles) {
    if (t.extended_axes.empty()) continue;
    const auto& spec = ws.vis(vis_id);
    const auto& marks = ws.marks(vis_id);
    const auto rows = marks.displayed_rows();
    const Rect w = ws.vis_world_rect(vis_id);
    for (auto side : t.extended_axes) {
      const auto* axis = marks.edge_axis(side);
      if (axis == nullptr) continue;
      AxisPayload p;
      p.side = side;
      p.column = axis->column;
      const std::size_t bins = t.axis_bins > 0 ? t.axis_bins : params.axis_bins;
      p.histogram = data::aggregate(ws.table(), axis->column, bins, [&](data::RowId r) { return rows.contains(r); });
      const auto& edges = p.histogram.bin_edges;
      const double span = axis->domain_max - axis->domain_min;
      std::uint64_t peak = 0;
      for (auto c : p.histogram.counts) peak = std::max(peak, c);
      for (std::size_t b = 0; b < p.histogram.counts.size(); ++b) {
        const auto along = [&](std::size_t e) {
          return span > 0.0 ? std::clamp((edges[e] - axis->domain_min) / span, 0.0, 1.0)
                            : static_cast<double>(e) / static_cast<double>(p.histogram.counts.size());
        };
        const double len = peak > 0 ? static_cast<double>(p.histogram.counts[b]) / static_cast<double>(peak) : 0.0;
        p.bars.push_back({along(b), along(b + 1), len});
      }
      p.plane = edge_strip(w, side, params.axis_strip_m);
      if (edge_obstructed(ws, spec, side)) {
        auto folded = spatial::fold_plane(w, spatial::planar(strip_rect(p.plane)));
        if (folded.edge_u.dot(p.plane.edge_u) < 0.0) {
          folded.origin = folded.origin + folded.edge_u;
          folded.edge_u = folded.edge_u * -1.0;
        }
        p.plane = folded;
        p.folded = true;
      }
      auto node = make_node("axis/" + vis_id + "/" + std::string(vis::to_string(side)), NodeKind::kAxisView, viewer,
                            vis_id);
      node.transform = basis(p.plane.origin, p.plane.edge_u, p.plane.edge_v);
      const auto c = p.plane.corners();
      node.extent.assign(c.begin(), c.end());
      node.payload = std::move(p);
      finish_node(node, cfg);
      out.push_back(std::move(node));
    }
  }
  return out;
}

std::vector<AugmentationNode> layer_nodes(const SessionState& state, const UserId& viewer) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& cfg = ws.display();
  const auto& params = ws.params();
  std::vector<AugmentationNode> out;
  for (const auto& [vis_id, t] : u.toggles) {
    if (t.layer_stack.empty()) continue;
    const Rect w = ws.vis_world_rect(vis_id);
    const int n = static_cast<int>(t.layer_stack.size());
    const auto scroll_it = u.layer_scroll.find(vis_id);
    const int active = scroll_it == u.layer_scroll.end() ? 0 : ((scroll_it->second % n) + n) % n;
    const auto emit = [&](std::string id, LayerPayload p, double z) {
      p.width_m = w.w;
      p.height_m = w.h;
      auto node = make_node("layer/" + vis_id + "/" + id, NodeKind::kVisLayer, viewer, vis_id);
      node.transform = {{w.x, w.y, z}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
      node.extent = rect_corners(w, z);
      node.payload = std::move(p);
      finish_node(node, cfg);
      out.push_back(std::move(node));
    };
    for (int k = 0; k < n; ++k) {
      auto spec = ws.vis(vis_id);
      spec.filter = t.layer_stack[k];
      LayerPayload p;
      p.layer = k;
      p.active = k == active;
      p.opacity = p.active ? 1.0 : params.layer_inactive_opacity;
      p.filter = spec.filter;
      p.marks = std::make_shared<const vis::MarkSet>(vis::build_marks(spec, ws.table()));
      const int rank = (k - active + n) % n;
      char id[16];
      std::snprintf(id, sizeof id, "%03d", k);
      emit(id, std::move(p), rank == 0 ? 0.0 : (rank + 1) * params.layer_spacing);
    }
    LayerPayload original;
    original.opacity = params.layer_inactive_opacity;
    original.filter = ws.vis(vis_id).filter;
    original.marks = ws.marks_ptr(vis_id);
    emit("original", std::move(original), params.layer_spacing);
  }
  return out;
}

std::vector<AugmentationNode> lens_nodes(const SessionState& state, const UserId& viewer) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& cfg = ws.display();
  const auto& params = ws.params();
  std::vector<AugmentationNode> out;
  for (const auto& [vis_id, lens] : u.lenses) {
    const auto& spec = ws.vis(vis_id);
    const auto& marks = ws.marks(vis_id);
    const auto keep = data::compile(lens.filter, ws.table());
    std::vector<std::string> categories;
    if (lens.mode == session::LensMode::kRemap) {
      const auto& col = ws.table().column(lens.remap_column);
      std::set<std::string> cats;
      for (vis::RowId r = 0; r < ws.table().row_count(); ++r)
        if (!col.missing(r)) cats.insert(col.text[r]);
      categories.assign(cats.begin(), cats.end());
    }
    const double point_m = vis::kPointRadiusPx * cfg.meters_per_px_x();
    std::vector<std::pair<Vec2, int>> placed;
    std::uint32_t inside = 0;
    for (const auto& m : marks.marks) {
      const Vec2 anchor = vis::mark_anchor_px(spec, m);
      if ((anchor - lens.center_px).norm() > lens.radius_px) continue;
      ++inside;
      LensMarkPayload p;
      p.mark = m.index;
      p.color = m.channels.color;
      switch (lens.mode) {
        case session::LensMode::kFilter:
          p.visible = std::any_of(m.row_ids.begin(), m.row_ids.end(), keep);
          break;
        case session::LensMode::kRemap: {
          const auto& col = ws.table().column(lens.remap_column);
          const auto r = m.row_ids.front();
          p.color = col.missing(r) ? -1
                                   : static_cast<int>(std::lower_bound(categories.begin(), categories.end(),
                                                                       col.text[r]) -
                                                      categories.begin());
          break;
        }
        case session::LensMode::kDeoverlap: {
          int level = 0;
          const auto clash = [&](int k) {
            return std::any_of(placed.begin(), placed.end(), [&](const auto& q) {
              return q.second == k && (q.first - anchor).norm() < 2.0 * vis::kPointRadiusPx;
            });
          };
          while (clash(level)) ++level;
          placed.emplace_back(anchor, level);
          p.level = level;
          break;
        }
      }
      const Vec3 pos = px_to_world(anchor, cfg, p.level * params.lens_step);
      auto node = make_node("lens/" + vis_id + "/mark/" + padded(m.index), NodeKind::kLens, viewer, vis_id);
      node.transform = {pos, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
      node.extent = {pos - Vec3{point_m, point_m, 0.0}, pos + Vec3{point_m, point_m, 0.0}};
      node.payload = p;
      finish_node(node, cfg);
      out.push_back(std::move(node));
    }
    LensRingPayload ring{lens.radius_px * cfg.meters_per_px_x(), lens.radius_px, std::string(to_string(lens.mode)),
                         inside};
    const Vec3 c = px_to_world(lens.center_px, cfg);
    auto node = make_node("lens/" + vis_id + "/ring", NodeKind::kLens, viewer, vis_id);
    node.transform = {c, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    node.extent = {c - Vec3{ring.radius_m, ring.radius_m, 0.0}, c + Vec3{ring.radius_m, ring.radius_m, 0.0}};
    node.payload = std::move(ring);
    finish_node(node, cfg);
    out.push_back(std::move(node));
  }
  return out;
}

std::vector<AugmentationNode> annotation_nodes(const SessionState& state, const UserId& viewer) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& cfg = ws.display();
  std::vector<AugmentationNode> out;
  const auto emit = [&](const session::Stroke& s) {
    const auto& spec = ws.vis(s.vis_id);
    AnnotationPayload p{s.id, s.color, s.shared, {}};
    for (auto q : s.points)
      p.points.push_back(px_to_world(vis::normalized_to_pixel(spec, q), cfg, ws.params().annotation_offset));
    auto node = make_node("annotation/" + s.id, NodeKind::kAnnotation,
                          s.shared ? std::string(session::kPublicLayer) : s.owner, s.vis_id);
    node.transform = {p.points.front(), {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    node.extent = p.points;
    node.payload = std::move(p);
    finish_node(node, cfg);
    out.push_back(std::move(node));
  };
  for (const auto& s : u.annotations) emit(s);
  for (const auto& s : state.public_strokes) emit(s);
  return out;
}

ARScene compose_user_scene(const SessionState& state, const UserId& viewer) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  ARScene scene;
  scene.viewer = viewer;
  scene.seq = state.seq;
  auto append = [&](std::vector<AugmentationNode> nodes) {
    for (auto& n : nodes) scene.nodes.push_back(std::move(n));
  };
  append(hinged_nodes(state, viewer));
  append(layer_nodes(state, viewer));
  append(extended_axis_nodes(state, viewer));
  append(embedded_vis_nodes(state, viewer, &scene.warnings));
  append(lens_nodes(state, viewer));
  append(link_nodes(state, viewer));
  append(annotation_nodes(state, viewer));
  if (u.curved_screen) {
    const auto cs = curved_screen_for(u.pose, ws.display(), ws.params());
    for (auto& n : scene.nodes) {
      const double x = n.transform.position.x;
      if (cs.in_window(x)) continue;
      n.transform.position = cs.map(n.transform.position);
      n.transform.u = cs.rotate(n.transform.u, x);
      n.transform.v = cs.rotate(n.transform.v, x);
      n.transform.n = cs.rotate(n.transform.n, x);
      for (auto& p : n.extent) p = cs.map(p);
      remap_payload(n.payload, cs);
      finish_node(n, ws.display());
    }
    append(curved_screen_nodes(state, viewer));
  }
  order_nodes(scene.nodes);
  return scene;
}

}  // namespace augview::augmentation
