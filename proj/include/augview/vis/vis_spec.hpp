#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "augview/common/canonical_json.hpp"
#include "augview/common/geometry.hpp"
#include "augview/data/filter.hpp"
#include "augview/data/table.hpp"

namespace augview::vis {

enum class ChartKind { kBar, kScatter, kLine, kParallelCoordinates, kPie };
enum class AxisSide { kLeft, kRight, kTop, kBottom };

std::string_view to_string(ChartKind kind);
ChartKind chart_kind_from_string(std::string_view s);
std::string_view to_string(AxisSide side);
AxisSide axis_side_from_string(std::string_view s);

// Declarative chart placed on the display. view_rect is in display pixels
// with the origin at the display's lower-left corner.
struct VisSpec {
  std::string id;
  ChartKind kind = ChartKind::kScatter;
  // Channel -> column. Channels: x, y, color, size.
  std::map<std::string, std::string> bindings;
  // Ordered axes of a parallel-coordinates chart.
  std::vector<std::string> dimensions;
  Rect view_rect;
  // Grouping column of bar and pie charts (falls back to the x binding).
  std::optional<std::string> group_by;
  // Rows shown by this chart.
  data::Filter filter;
  // Depth of the 3D variant, consumed by the augmentation engine (0 = flat chart).
  double extrusion_depth = 0.0;
  std::string title;

  const std::string* binding(std::string_view channel) const;
  // Grouping column for bar/pie charts; nullptr for other kinds.
  const std::string* group_column() const;
};

// Checks bindings against the table. Throws Error(kInvalidBinding).
void validate_spec(const VisSpec& spec, const data::DataTable& table);

json to_json(const VisSpec& spec);
VisSpec vis_spec_from_json(const json& j);

}  // namespace augview::vis
