#include "augview/session/layout.hpp"

#include <fstream>
#include <set>

#include "augview/common/error.hpp"

namespace augview::session {

void validate_layout(const Layout& layout, const data::DataTable& table) {
  const auto& cfg = layout.display;
  spatial::validate(cfg);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < layout.visualizations.size(); ++i) {
    const auto& v = layout.visualizations[i];
    const std::string field = "visualizations[" + std::to_string(i) + "]";
    if (!ids.insert(v.id).second) {
      throw Error(ErrorCode::kConfigError, field + ".id: duplicate id '" + v.id + "'");
    }
    const Rect& r = v.view_rect;
    if (!(r.w > 0.0) || !(r.h > 0.0) || r.x < 0.0 || r.y < 0.0 || r.right() > cfg.width_px ||
        r.top() > cfg.height_px) {
      throw Error(ErrorCode::kConfigError,
                  field + ".view_rect: '" + v.id + "' does not lie within the display pixel bounds");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& other = layout.visualizations[j];
      if (r.overlaps(other.view_rect)) {
        throw Error(ErrorCode::kConfigError,
                    field + ".view_rect: '" + other.id + "' and '" + v.id + "' overlap");
      }
    }
    try {
      vis::validate_spec(v, table);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigError, field + " ('" + v.id + "'): " + e.what());
    }
  }
  try {
    augmentation::validate(layout.params);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
}

json to_json(const Layout& layout) {
  json charts = json::array();
  for (const auto& v : layout.visualizations) charts.push_back(vis::to_json(v));
  return json{{"display", spatial::to_json(layout.display)},
              {"visualizations", std::move(charts)},
              {"augmentation", augmentation::to_json(layout.params)}};
}

Layout layout_from_json(const json& j, const data::DataTable& table) {
  Layout layout;
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "layout must be a JSON object");
  if (!j.contains("display")) throw Error(ErrorCode::kConfigError, "display: missing");
  layout.display = spatial::display_from_json(j.at("display"));
  if (j.contains("visualizations")) {
    const auto& arr = j.at("visualizations");
    if (!arr.is_array()) throw Error(ErrorCode::kConfigError, "visualizations: must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      try {
        layout.visualizations.push_back(vis::vis_spec_from_json(arr[i]));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kConfigError, "visualizations[" + std::to_string(i) + "]: " + e.what());
      } catch (const Error& e) {
        throw Error(ErrorCode::kConfigError, "visualizations[" + std::to_string(i) + "]: " + e.what());
      }
    }
  }
  try {
    layout.params = augmentation::params_from_json(j.value("augmentation", json()));
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  validate_layout(layout, table);
  return layout;
}

Layout load_layout_file(const std::filesystem::path& path, const data::DataTable& table) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "layout: cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, "layout: " + std::string(e.what()));
  }
  return layout_from_json(j, table);
}

Workspace::Workspace(std::shared_ptr<const data::DataTable> table, Layout layout)
    : table_(std::move(table)), layout_(std::move(layout)) {
  validate_layout(layout_, *table_);
  for (std::size_t i = 0; i < layout_.visualizations.size(); ++i) {
    const auto& spec = layout_.visualizations[i];
    index_.emplace(spec.id, i);
    marks_.push_back(std::make_shared<const vis::MarkSet>(vis::build_marks(spec, *table_)));
  }
}

std::size_t Workspace::index_of(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::kUnknownVis, "no visualization '" + std::string(id) + "'");
  return it->second;
}

const vis::VisSpec* Workspace::find_vis(std::string_view id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &layout_.visualizations[it->second];
}

const vis::VisSpec& Workspace::vis(std::string_view id) const {
  return layout_.visualizations[index_of(id)];
}

const vis::MarkSet& Workspace::marks(std::string_view id) const { return *marks_[index_of(id)]; }

std::shared_ptr<const vis::MarkSet> Workspace::marks_ptr(std::string_view id) const {
  return marks_[index_of(id)];
}

Vec3 Workspace::mark_world(std::string_view vis_id, std::uint32_t mark) const {
  const auto i = index_of(vis_id);
  return spatial::display_to_world(
      vis::mark_anchor_px(layout_.visualizations[i], marks_[i]->marks.at(mark)), layout_.display);
}

Rect Workspace::vis_world_rect(std::string_view vis_id) const {
  return spatial::display_rect_to_world(vis(vis_id).view_rect, layout_.display);
}

std::shared_ptr<const Workspace> make_workspace(std::shared_ptr<const data::DataTable> table, Layout layout) {
  return std::make_shared<const Workspace>(std::move(table), std::move(layout));
}

std::shared_ptr<const Workspace> load_workspace(const std::filesystem::path& dataset,
                                                const std::filesystem::path& layout) {
  auto table = std::make_shared<const data::DataTable>(data::load_table_file(dataset));
  auto parsed = load_layout_file(layout, *table);
  return make_workspace(std::move(table), std::move(parsed));
}

}  // namespace augview::session
