#include "augview/sim/oracles.hpp"

#include <cmath>

namespace augview::sim::oracle {

std::vector<std::uint64_t> histogram(const data::DataTable& table, const std::string& column,
                                     const std::set<data::RowId>& rows, std::size_t bins) {
  const auto& col = table.column(column);
  std::vector<double> values;
  for (auto r : rows)
    if (!col.missing(r)) values.push_back(col.numeric[r]);
  std::vector<std::uint64_t> counts(bins, 0);
  if (values.empty()) return counts;
  double lo = values[0];
  double hi = values[0];
  for (double v : values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo == hi) {
    counts.assign(1, values.size());
    return counts;
  }
  for (double v : values) {
    std::size_t bin = 0;
    for (std::size_t i = 1; i < bins; ++i) {
      const double edge = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
      if (v >= edge) bin = i;
    }
    ++counts[bin];
  }
  return counts;
}

std::map<std::string, std::uint64_t> category_counts(const data::DataTable& table, const std::string& column,
                                                     const std::vector<data::RowId>& rows) {
  const auto& col = table.column(column);
  std::map<std::string, std::uint64_t> out;
  for (auto r : rows)
    if (!col.text[r].empty()) ++out[col.text[r]];
  return out;
}

std::set<LinkKey> links(const session::SessionState& state, const session::UserId& viewer) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& table = ws.table();
  const auto keep = u.link_filter.empty() ? data::accept_all() : data::compile(u.link_filter, table);
  std::set<LinkKey> out;
  for (const auto& [vis_id, selected] : u.selections) {
    const auto& source = ws.marks(vis_id).marks;
    for (const auto& other : ws.layout().visualizations) {
      if (other.id == vis_id) continue;
      const auto& target = ws.marks(other.id).marks;
      for (const auto& a : source)
        for (const auto& b : target) {
          bool linked = false;
          for (auto r : a.row_ids) {
            if (!selected.contains(r) || !keep(r)) continue;
            for (auto q : b.row_ids)
              if (q == r) linked = true;
          }
          if (linked) out.emplace(vis_id, a.index, other.id, b.index);
        }
    }
  }
  return out;
}

std::optional<HingeExpectation> hinge(const session::SessionState& state, const session::UserId& viewer,
                                      const std::string& vis_id) {
  const auto& u = state.user(viewer);
  const auto& ws = *state.workspace;
  const auto& p = ws.params();
  const auto& spec = ws.vis(vis_id);
  const auto& cfg = ws.display();
  const auto toggle = u.toggles.find(vis_id);
  bool wanted = toggle != u.toggles.end() && toggle->second.hinged;
  for (const auto& [v, rows] : u.selections)
    for (const auto& m : ws.marks(vis_id).marks)
      for (auto r : m.row_ids)
        if (rows.contains(r)) wanted = true;
  if (!wanted || u.pose.position.z > p.d_overview) return std::nullopt;
  const double mx = cfg.width_m / cfg.width_px;
  const double my = cfg.height_m / cfg.height_px;
  const double left = spec.view_rect.x * mx;
  const double right = (spec.view_rect.x + spec.view_rect.w) * mx;
  const double cx = (spec.view_rect.x + spec.view_rect.w / 2.0) * mx;
  const double cy = (spec.view_rect.y + spec.view_rect.h / 2.0) * my;
  const auto& e = u.pose.position;
  const double d = std::sqrt((e.x - cx) * (e.x - cx) + (e.y - cy) * (e.y - cy) + e.z * e.z);
  if (d <= p.d_near) return std::nullopt;
  double t = (d - p.d_near) / (p.d_far - p.d_near);
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return HingeExpectation{90.0 * t, std::abs(e.x - left) < std::abs(e.x - right) ? spatial::Side::kLeft
                                                                                : spatial::Side::kRight};
}

}  // namespace augview::sim::oracle
