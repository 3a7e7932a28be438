#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "augview/common/canonical_json.hpp"
#include "augview/common/geometry.hpp"
#include "augview/data/table.hpp"
#include "augview/vis/vis_spec.hpp"

namespace augview::vis {

using data::RowId;
using RowSet = std::set<RowId>;

enum class MarkShape { kRect, kPoint, kPolyline, kSector };

std::string_view to_string(MarkShape shape);

// Geometry in view-normalized coordinates: (0,0) is the lower-left corner of
// the chart's view_rect, (1,1) the upper-right corner.
struct MarkGeometry {
  MarkShape shape = MarkShape::kPoint;
  Rect rect;                   // kRect
  Vec2 point;                  // kPoint; pie center for kSector
  std::vector<Vec2> vertices;  // kPolyline
  double start_deg = 0.0;      // kSector, counter-clockwise from +x
  double span_deg = 0.0;
};

struct MarkChannels {
  int color = -1;      // palette index by sorted category order, -1 when unbound
  double size = 0.0;   // min-max scaled size channel, 0 when unbound
  double value = 0.0;  // aggregated value of bar and pie marks
};

struct Mark {
  std::uint32_t index = 0;
  std::string vis_id;
  std::vector<RowId> row_ids;  // sorted, non-empty
  MarkGeometry geometry;
  MarkChannels channels;
  // Group value of aggregate marks (bar/pie) and series key of line marks.
  std::optional<std::string> category;
};

struct AxisModel {
  std::string vis_id;
  AxisSide side = AxisSide::kBottom;
  std::string column;
  bool categorical = false;
  std::vector<double> tick_positions;  // normalized along the axis, increasing
  std::vector<std::string> labels;
  double pixel_start = 0.0;
  double pixel_end = 0.0;
  double domain_min = 0.0;
  double domain_max = 0.0;
  // Normalized position across the chart for parallel-coordinate axes.
  double offset = 0.0;
};

struct LegendEntry {
  std::string category;
  int color = -1;
};

struct MarkSet {
  std::string vis_id;
  std::vector<Mark> marks;
  std::vector<AxisModel> axes;
  std::vector<LegendEntry> legend;
  double extrusion_depth = 0.0;

  const AxisModel* axis(AxisSide side) const;
  // Axis drawn along a chart edge; top and right fall back to bottom and left.
  const AxisModel* edge_axis(AxisSide side) const;
  // Union of the row ids of all marks.
  RowSet displayed_rows() const;
};

// Radius of the disc used for point marks, in display pixels.
inline constexpr double kPointRadiusPx = 12.0;
// Pick tolerance around polyline marks, in display pixels.
inline constexpr double kPolylinePickPx = 6.0;

// Throws Error(kInvalidBinding) when the spec does not fit the table.
MarkSet build_marks(const VisSpec& spec, const data::DataTable& table);

// Indices of the marks whose row ids intersect `selected`, ascending.
std::vector<std::uint32_t> linked_marks(const RowSet& selected, const MarkSet& target);

// Topmost (highest index) mark containing the display-pixel point.
// Throws Error(kOutsideView) when the point is outside the chart.
std::optional<std::uint32_t> hit_test(const VisSpec& spec, const MarkSet& marks, Vec2 pixel);

Vec2 normalized_to_pixel(const VisSpec& spec, Vec2 normalized);
// Representative display-pixel point of a mark (rect center, point, polyline
// centroid, or the middle of a pie sector).
Vec2 mark_anchor_px(const VisSpec& spec, const Mark& mark);

json to_json(const Mark& mark);
json to_json(const MarkSet& set);

}  // namespace augview::vis
