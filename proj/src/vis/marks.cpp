#include "augview/vis/marks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "augview/common/error.hpp"

namespace augview::vis {

namespace {

using data::Column;
using data::DataTable;
using data::DimensionKind;

constexpr int kTickCount = 5;

struct Domain {
  double lo = 0.0;
  double hi = 0.0;

  double normalize(double v) const { return hi == lo ? 0.5 : (v - lo) / (hi - lo); }
};

Domain domain_of(const Column& col, const std::vector<RowId>& rows) {
  Domain d{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (RowId r : rows) {
    d.lo = std::min(d.lo, col.numeric[r]);
    d.hi = std::max(d.hi, col.numeric[r]);
  }
  if (rows.empty()) d = {0.0, 0.0};
  return d;
}

std::string format_value(const Column& col, double v) {
  if (col.kind == DimensionKind::kTemporal) return data::format_iso_date(v);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

AxisModel quantitative_axis(const VisSpec& spec, AxisSide side, const Column& col, Domain d) {
  AxisModel a;
  a.vis_id = spec.id;
  a.side = side;
  a.column = col.name;
  a.domain_min = d.lo;
  a.domain_max = d.hi;
  for (int i = 0; i < kTickCount; ++i) {
    const double t = static_cast<double>(i) / (kTickCount - 1);
    a.tick_positions.push_back(t);
    a.labels.push_back(format_value(col, d.lo + t * (d.hi - d.lo)));
  }
  return a;
}

void set_pixel_span(const VisSpec& spec, AxisModel& a) {
  const Rect& r = spec.view_rect;
  if (a.side == AxisSide::kBottom || a.side == AxisSide::kTop) {
    a.pixel_start = r.x;
    a.pixel_end = r.right();
  } else {
    a.pixel_start = r.y;
    a.pixel_end = r.top();
  }
}

// Sorted distinct categories of a column over the whole table; the position is
// the palette index, so every chart colors a category the same way.
std::vector<std::string> palette_order(const Column& col) {
  std::set<std::string> distinct;
  for (std::size_t r = 0; r < col.text.size(); ++r) {
    if (!col.text[r].empty()) distinct.insert(col.text[r]);
  }
  return {distinct.begin(), distinct.end()};
}

int palette_index(const std::vector<std::string>& order, const std::string& category) {
  const auto it = std::lower_bound(order.begin(), order.end(), category);
  if (it == order.end() || *it != category) return -1;
  return static_cast<int>(it - order.begin());
}

struct Group {
  std::string label;
  std::vector<RowId> rows;
  double value = 0.0;
};

// Groups for bar and pie charts: quantitative keys sort numerically and are
// labelled with the text of their first row, categorical keys sort by text.
std::vector<Group> build_groups(const VisSpec& spec, const DataTable& table,
                                const std::vector<RowId>& rows) {
  const Column& key = table.column(*spec.group_column());
  const Column* y = spec.binding("y") ? &table.column(*spec.binding("y")) : nullptr;
  std::vector<Group> groups;
  if (key.is_quantitative()) {
    std::map<double, Group> by_value;
    for (RowId r : rows) {
      if (key.missing(r)) continue;
      auto& g = by_value[key.numeric[r]];
      if (g.rows.empty()) g.label = key.text[r];
      g.rows.push_back(r);
    }
    for (auto& [v, g] : by_value) groups.push_back(std::move(g));
  } else {
    std::map<std::string, Group> by_text;
    for (RowId r : rows) {
      if (key.missing(r)) continue;
      auto& g = by_text[key.text[r]];
      g.label = key.text[r];
      g.rows.push_back(r);
    }
    for (auto& [t, g] : by_text) groups.push_back(std::move(g));
  }
  for (auto& g : groups) {
    if (!y) {
      g.value = static_cast<double>(g.rows.size());
      continue;
    }
    for (RowId r : g.rows) {
      if (!y->missing(r)) g.value += y->numeric[r];
    }
  }
  return groups;
}

std::vector<RowId> rows_with(const DataTable& table, const std::vector<RowId>& rows,
                             const std::vector<const Column*>& required) {
  std::vector<RowId> out;
  for (RowId r : rows) {
    bool ok = true;
    for (const auto* c : required) ok = ok && !c->missing(r);
    if (ok) out.push_back(r);
  }
  (void)table;
  return out;
}

void build_points(const VisSpec& spec, const DataTable& table, const std::vector<RowId>& shown,
                  MarkSet& out) {
  const Column& x = table.column(*spec.binding("x"));
  const Column& y = table.column(*spec.binding("y"));
  const auto rows = rows_with(table, shown, {&x, &y});
  if (rows.empty()) return;
  const Domain dx = domain_of(x, rows);
  const Domain dy = domain_of(y, rows);

  const Column* color = spec.binding("color") ? &table.column(*spec.binding("color")) : nullptr;
  const Column* size = spec.binding("size") ? &table.column(*spec.binding("size")) : nullptr;
  const auto order = color ? palette_order(*color) : std::vector<std::string>{};
  Domain dsize;
  if (size) dsize = domain_of(*size, rows_with(table, rows, {size}));

  auto channels_of = [&](RowId r) {
    MarkChannels ch;
    if (color && !color->missing(r)) ch.color = palette_index(order, color->text[r]);
    if (size && !size->missing(r)) ch.size = dsize.normalize(size->numeric[r]);
    return ch;
  };

  if (spec.kind == ChartKind::kScatter) {
    for (RowId r : rows) {
      Mark m;
      m.index = static_cast<std::uint32_t>(out.marks.size());
      m.vis_id = spec.id;
      m.row_ids = {r};
      m.geometry.shape = MarkShape::kPoint;
      m.geometry.point = {dx.normalize(x.numeric[r]), dy.normalize(y.numeric[r])};
      m.channels = channels_of(r);
      out.marks.push_back(std::move(m));
    }
  } else {
    std::map<std::string, std::vector<RowId>> series;
    for (RowId r : rows) series[color ? color->text[r] : std::string()].push_back(r);
    for (auto& [key, members] : series) {
      std::stable_sort(members.begin(), members.end(),
                       [&](RowId a, RowId b) { return x.numeric[a] < x.numeric[b]; });
      Mark m;
      m.index = static_cast<std::uint32_t>(out.marks.size());
      m.vis_id = spec.id;
      m.geometry.shape = MarkShape::kPolyline;
      for (RowId r : members) {
        m.geometry.vertices.push_back({dx.normalize(x.numeric[r]), dy.normalize(y.numeric[r])});
      }
      m.row_ids = members;
      std::sort(m.row_ids.begin(), m.row_ids.end());
      if (color) {
        m.category = key;
        m.channels.color = palette_index(order, key);
      }
      out.marks.push_back(std::move(m));
    }
  }

  auto bottom = quantitative_axis(spec, AxisSide::kBottom, x, dx);
  auto left = quantitative_axis(spec, AxisSide::kLeft, y, dy);
  out.axes = {bottom, left};
  if (color) {
    std::set<std::string> present;
    for (RowId r : rows) {
      if (!color->missing(r)) present.insert(color->text[r]);
    }
    for (const auto& c : present) out.legend.push_back({c, palette_index(order, c)});
  }
}

void build_groups_marks(const VisSpec& spec, const DataTable& table, const std::vector<RowId>& shown,
                        MarkSet& out) {
  auto groups = build_groups(spec, table, shown);
  if (groups.empty()) return;
  const Column& key = table.column(*spec.group_column());
  const Column* color = spec.binding("color") ? &table.column(*spec.binding("color")) : nullptr;
  const auto order = color ? palette_order(*color) : std::vector<std::string>{};

  if (spec.kind == ChartKind::kBar) {
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& g : groups) {
      lo = std::min(lo, g.value);
      hi = std::max(hi, g.value);
    }
    const Domain d{lo, hi};
    const double k = static_cast<double>(groups.size());
    const double pad = 0.1 / k;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      auto& g = groups[i];
      const double base = d.hi == d.lo ? 0.0 : d.normalize(0.0);
      const double top = d.hi == d.lo ? 0.0 : d.normalize(g.value);
      Mark m;
      m.index = static_cast<std::uint32_t>(i);
      m.vis_id = spec.id;
      m.row_ids = g.rows;
      std::sort(m.row_ids.begin(), m.row_ids.end());
      m.geometry.shape = MarkShape::kRect;
      m.geometry.rect = {static_cast<double>(i) / k + pad, std::min(base, top), 1.0 / k - 2.0 * pad,
                         std::abs(top - base)};
      m.channels.value = g.value;
      if (color && !color->missing(g.rows.front())) {
        m.channels.color = palette_index(order, color->text[g.rows.front()]);
      }
      m.category = g.label;
      out.marks.push_back(std::move(m));
    }
    AxisModel bottom;
    bottom.vis_id = spec.id;
    bottom.side = AxisSide::kBottom;
    bottom.column = key.name;
    bottom.categorical = true;
    bottom.domain_min = 0.0;
    bottom.domain_max = k;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      bottom.tick_positions.push_back((static_cast<double>(i) + 0.5) / k);
      bottom.labels.push_back(groups[i].label);
    }
    AxisModel left;
    left.vis_id = spec.id;
    left.side = AxisSide::kLeft;
    left.column = spec.binding("y") ? *spec.binding("y") : std::string("count");
    left.domain_min = d.lo;
    left.domain_max = d.hi;
    for (int i = 0; i < kTickCount; ++i) {
      const double t = static_cast<double>(i) / (kTickCount - 1);
      left.tick_positions.push_back(t);
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", d.lo + t * (d.hi - d.lo));
      left.labels.push_back(buf);
    }
    out.axes = {bottom, left};
  } else {
    double total = 0.0;
    for (const auto& g : groups) total += std::max(0.0, g.value);
    if (total <= 0.0) return;
    double start = 0.0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      auto& g = groups[i];
      const bool last = i + 1 == groups.size();
      const double span = last ? 360.0 - start : 360.0 * std::max(0.0, g.value) / total;
      Mark m;
      m.index = static_cast<std::uint32_t>(i);
      m.vis_id = spec.id;
      m.row_ids = g.rows;
      std::sort(m.row_ids.begin(), m.row_ids.end());
      m.geometry.shape = MarkShape::kSector;
      m.geometry.point = {0.5, 0.5};
      m.geometry.start_deg = start;
      m.geometry.span_deg = span;
      m.channels.value = g.value;
      m.channels.color = static_cast<int>(i);
      if (color && !color->missing(g.rows.front())) {
        m.channels.color = palette_index(order, color->text[g.rows.front()]);
      }
      m.category = g.label;
      out.marks.push_back(std::move(m));
      start += span;
    }
  }
  if (color) {
    std::set<std::string> present;
    for (const auto& g : groups) {
      for (RowId r : g.rows) {
        if (!color->missing(r)) present.insert(color->text[r]);
      }
    }
    for (const auto& c : present) out.legend.push_back({c, palette_index(order, c)});
  }
}

void build_parallel(const VisSpec& spec, const DataTable& table, const std::vector<RowId>& shown,
                    MarkSet& out) {
  std::vector<const Column*> dims;
  for (const auto& d : spec.dimensions) dims.push_back(&table.column(d));
  const auto rows = rows_with(table, shown, dims);
  if (rows.empty()) return;
  std::vector<Domain> domains;
  for (const auto* c : dims) domains.push_back(domain_of(*c, rows));
  const Column* color = spec.binding("color") ? &table.column(*spec.binding("color")) : nullptr;
  const auto order = color ? palette_order(*color) : std::vector<std::string>{};
  const double last = static_cast<double>(dims.size() - 1);
  for (RowId r : rows) {
    Mark m;
    m.index = static_cast<std::uint32_t>(out.marks.size());
    m.vis_id = spec.id;
    m.row_ids = {r};
    m.geometry.shape = MarkShape::kPolyline;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      m.geometry.vertices.push_back({static_cast<double>(i) / last, domains[i].normalize(dims[i]->numeric[r])});
    }
    if (color && !color->missing(r)) m.channels.color = palette_index(order, color->text[r]);
    out.marks.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    auto a = quantitative_axis(spec, i + 1 == dims.size() ? AxisSide::kRight : AxisSide::kLeft, *dims[i],
                               domains[i]);
    a.offset = static_cast<double>(i) / last;
    out.axes.push_back(std::move(a));
  }
  if (color) {
    std::set<std::string> present;
    for (RowId r : rows) {
      if (!color->missing(r)) present.insert(color->text[r]);
    }
    for (const auto& c : present) out.legend.push_back({c, palette_index(order, c)});
  }
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 == 0.0 ? 0.0 : ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

double pie_radius_px(const VisSpec& spec) {
  return 0.5 * std::min(spec.view_rect.w, spec.view_rect.h);
}

bool contains(const VisSpec& spec, const Mark& m, Vec2 p) {
  const auto& g = m.geometry;
  switch (g.shape) {
    case MarkShape::kRect: {
      const Vec2 lo = normalized_to_pixel(spec, {g.rect.x, g.rect.y});
      const Vec2 hi = normalized_to_pixel(spec, {g.rect.right(), g.rect.top()});
      return Rect{lo.x, lo.y, hi.x - lo.x, hi.y - lo.y}.contains(p);
    }
    case MarkShape::kPoint:
      return (p - normalized_to_pixel(spec, g.point)).norm() <= kPointRadiusPx;
    case MarkShape::kPolyline: {
      for (std::size_t i = 0; i + 1 < g.vertices.size(); ++i) {
        if (segment_distance(p, normalized_to_pixel(spec, g.vertices[i]),
                             normalized_to_pixel(spec, g.vertices[i + 1])) <= kPolylinePickPx) {
          return true;
        }
      }
      return g.vertices.size() == 1 &&
             (p - normalized_to_pixel(spec, g.vertices.front())).norm() <= kPolylinePickPx;
    }
    case MarkShape::kSector: {
      const Vec2 c = spec.view_rect.center();
      const Vec2 d = p - c;
      if (d.norm() > pie_radius_px(spec)) return false;
      double angle = std::atan2(d.y, d.x) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 360.0;
      return angle >= g.start_deg && angle <= g.start_deg + g.span_deg;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(MarkShape shape) {
  switch (shape) {
    case MarkShape::kRect: return "rect";
    case MarkShape::kPoint: return "point";
    case MarkShape::kPolyline: return "polyline";
    case MarkShape::kSector: return "sector";
  }
  return "point";
}

const AxisModel* MarkSet::axis(AxisSide side) const {
  for (const auto& a : axes) {
    if (a.side == side) return &a;
  }
  return nullptr;
}

const AxisModel* MarkSet::edge_axis(AxisSide side) const {
  if (const auto* a = axis(side)) return a;
  if (side == AxisSide::kRight) return axis(AxisSide::kLeft);
  if (side == AxisSide::kTop) return axis(AxisSide::kBottom);
  return nullptr;
}

RowSet MarkSet::displayed_rows() const {
  RowSet rows;
  for (const auto& m : marks) rows.insert(m.row_ids.begin(), m.row_ids.end());
  return rows;
}

MarkSet build_marks(const VisSpec& spec, const DataTable& table) {
  validate_spec(spec, table);
  MarkSet out;
  out.vis_id = spec.id;
  out.extrusion_depth = spec.extrusion_depth;

  const auto keep = data::compile(spec.filter, table);
  std::vector<RowId> shown;
  for (RowId r = 0; r < table.row_count(); ++r) {
    if (keep(r)) shown.push_back(r);
  }
  if (shown.empty()) return out;

  switch (spec.kind) {
    case ChartKind::kScatter:
    case ChartKind::kLine:
      build_points(spec, table, shown, out);
      break;
    case ChartKind::kBar:
    case ChartKind::kPie:
      build_groups_marks(spec, table, shown, out);
      break;
    case ChartKind::kParallelCoordinates:
      build_parallel(spec, table, shown, out);
      break;
  }
  for (auto& a : out.axes) set_pixel_span(spec, a);
  return out;
}

std::vector<std::uint32_t> linked_marks(const RowSet& selected, const MarkSet& target) {
  std::vector<std::uint32_t> out;
  if (selected.empty()) return out;
  for (const auto& m : target.marks) {
    for (RowId r : m.row_ids) {
      if (selected.contains(r)) {
        out.push_back(m.index);
        break;
      }
    }
  }
  return out;
}

std::optional<std::uint32_t> hit_test(const VisSpec& spec, const MarkSet& marks, Vec2 pixel) {
  if (!spec.view_rect.contains(pixel)) {
    throw Error(ErrorCode::kOutsideView, "point outside view '" + spec.id + "'");
  }
  for (auto it = marks.marks.rbegin(); it != marks.marks.rend(); ++it) {
    if (contains(spec, *it, pixel)) return it->index;
  }
  return std::nullopt;
}

Vec2 normalized_to_pixel(const VisSpec& spec, Vec2 n) {
  const Rect& r = spec.view_rect;
  return {r.x + n.x * r.w, r.y + n.y * r.h};
}

Vec2 mark_anchor_px(const VisSpec& spec, const Mark& mark) {
  const auto& g = mark.geometry;
  switch (g.shape) {
    case MarkShape::kRect:
      return normalized_to_pixel(spec, g.rect.center());
    case MarkShape::kPoint:
      return normalized_to_pixel(spec, g.point);
    case MarkShape::kPolyline: {
      Vec2 sum;
      for (const auto& v : g.vertices) sum = sum + v;
      return normalized_to_pixel(spec, sum * (1.0 / static_cast<double>(std::max<std::size_t>(1, g.vertices.size()))));
    }
    case MarkShape::kSector: {
      const double mid = (g.start_deg + g.span_deg / 2.0) * std::numbers::pi / 180.0;
      const double r = 0.5 * pie_radius_px(spec);
      return spec.view_rect.center() + Vec2{std::cos(mid), std::sin(mid)} * r;
    }
  }
  return spec.view_rect.center();
}

json to_json(const Mark& m) {
  json geom{{"shape", to_string(m.geometry.shape)}};
  const auto& g = m.geometry;
  switch (g.shape) {
    case MarkShape::kRect:
      geom["rect"] = {g.rect.x, g.rect.y, g.rect.w, g.rect.h};
      break;
    case MarkShape::kPoint:
      geom["point"] = {g.point.x, g.point.y};
      break;
    case MarkShape::kPolyline: {
      json v = json::array();
      for (const auto& p : g.vertices) v.push_back({p.x, p.y});
      geom["vertices"] = std::move(v);
      break;
    }
    case MarkShape::kSector:
      geom["center"] = {g.point.x, g.point.y};
      geom["start_deg"] = g.start_deg;
      geom["span_deg"] = g.span_deg;
      break;
  }
  json j{{"index", m.index},
         {"rows", m.row_ids},
         {"geometry", std::move(geom)},
         {"color", m.channels.color},
         {"size", m.channels.size},
         {"value", m.channels.value}};
  if (m.category) j["category"] = *m.category;
  return j;
}

json to_json(const MarkSet& set) {
  json marks = json::array();
  for (const auto& m : set.marks) marks.push_back(to_json(m));
  json axes = json::array();
  for (const auto& a : set.axes) {
    axes.push_back({{"side", to_string(a.side)},
                    {"column", a.column},
                    {"categorical", a.categorical},
                    {"ticks", a.tick_positions},
                    {"labels", a.labels},
                    {"pixel_span", {a.pixel_start, a.pixel_end}},
                    {"domain", {a.domain_min, a.domain_max}},
                    {"offset", a.offset}});
  }
  json legend = json::array();
  for (const auto& l : set.legend) legend.push_back({{"category", l.category}, {"color", l.color}});
  return json{{"vis_id", set.vis_id},
              {"marks", std::move(marks)},
              {"axes", std::move(axes)},
              {"legend", std::move(legend)},
              {"extrusion_depth", set.extrusion_depth}};
}

}  // namespace augview::vis
