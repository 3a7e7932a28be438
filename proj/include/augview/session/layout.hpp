#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "augview/augmentation/params.hpp"
#include "augview/common/canonical_json.hpp"
#include "augview/data/table.hpp"
#include "augview/spatial/display.hpp"
#include "augview/vis/marks.hpp"
#include "augview/vis/vis_spec.hpp"

namespace augview::session {

struct Layout {
  spatial::DisplayConfig display;
  std::vector<vis::VisSpec> visualizations;
  augmentation::AugmentationParams params;
};

// Throws Error(kConfigError) naming the offending field: charts outside the
// display, overlapping charts (both ids), duplicate ids, invalid bindings.
void validate_layout(const Layout& layout, const data::DataTable& table);

json to_json(const Layout& layout);
Layout layout_from_json(const json& j, const data::DataTable& table);
Layout load_layout_file(const std::filesystem::path& path, const data::DataTable& table);

// Immutable bundle of everything a session derives from its inputs: the table,
// the layout, and the mark set of every chart.
class Workspace {
 public:
  Workspace(std::shared_ptr<const data::DataTable> table, Layout layout);

  const data::DataTable& table() const { return *table_; }
  const std::shared_ptr<const data::DataTable>& table_ptr() const { return table_; }
  const Layout& layout() const { return layout_; }
  const spatial::DisplayConfig& display() const { return layout_.display; }
  const augmentation::AugmentationParams& params() const { return layout_.params; }

  const vis::VisSpec* find_vis(std::string_view id) const;
  // Throw Error(kUnknownVis).
  const vis::VisSpec& vis(std::string_view id) const;
  const vis::MarkSet& marks(std::string_view id) const;
  std::shared_ptr<const vis::MarkSet> marks_ptr(std::string_view id) const;

  // World position of a mark's anchor on the screen plane.
  Vec3 mark_world(std::string_view vis_id, std::uint32_t mark) const;
  // World rectangle (meters, z = 0) covered by a chart.
  Rect vis_world_rect(std::string_view vis_id) const;

 private:
  std::size_t index_of(std::string_view id) const;

  std::shared_ptr<const data::DataTable> table_;
  Layout layout_;
  std::vector<std::shared_ptr<const vis::MarkSet>> marks_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

std::shared_ptr<const Workspace> make_workspace(std::shared_ptr<const data::DataTable> table, Layout layout);
// Loads a CSV dataset and a layout file. Errors as load_table_file and load_layout_file.
std::shared_ptr<const Workspace> load_workspace(const std::filesystem::path& dataset,
                                                const std::filesystem::path& layout);

}  // namespace augview::session
