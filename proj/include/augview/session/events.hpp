#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "augview/common/canonical_json.hpp"
#include "augview/data/filter.hpp"
#include "augview/session/state.hpp"

namespace augview::session {

struct JoinEvent {
  UserId user;
  std::optional<spatial::Pose> pose;
};

struct LeaveEvent {
  UserId user;
};

struct PoseUpdateEvent {
  UserId user;
  Vec3 position;
  Vec3 facing{0.0, 0.0, -1.0};
};

enum class SelectMode { kReplace, kToggle };

// Rows come either from an explicit list or from a filter over the table.
struct SelectEvent {
  UserId user;
  std::string vis;
  vis::RowSet rows;
  std::optional<data::Filter> where;
  SelectMode mode = SelectMode::kReplace;
};

enum class Technique { kEmbedded, kHinged, kCurvedScreen, kExtendedAxis, kLayers, kLinkFilter };
std::string_view to_string(Technique t);
Technique technique_from_string(std::string_view s);

// Parameters by technique:
//   embedded:      {"on": bool, "mark": index | "category": text, "dimension": column}
//   hinged:        {"on": bool}
//   curved_screen: {"on": bool}
//   extended_axis: {"side": "left"|"right"|"top"|"bottom", "on": bool, "bins": n}
//   layers:        {"stack": [filter, ...]}   (empty stack clears)
//   link_filter:   {"filter": filter}
struct TechniqueToggleEvent {
  UserId user;
  std::string vis;
  Technique technique = Technique::kHinged;
  json params = json::object();
};

struct PenStrokeEvent {
  UserId user;
  std::string vis;
  std::vector<Vec2> points;
};

struct ShareAnnotationEvent {
  UserId user;
  std::string stroke_id;
};

struct ScrollLayersEvent {
  UserId user;
  std::string vis;
  int delta = 1;
};

struct LensMoveEvent {
  UserId user;
  std::string vis;
  Vec2 center_px;
};

struct LensConfigureEvent {
  UserId user;
  std::string vis;
  bool active = true;
  std::optional<Vec2> center_px;
  std::optional<double> radius_px;
  LensMode mode = LensMode::kFilter;
  data::Filter filter;
  std::string remap_column;
};

using EventBody = std::variant<JoinEvent, LeaveEvent, PoseUpdateEvent, SelectEvent, TechniqueToggleEvent,
                               PenStrokeEvent, ShareAnnotationEvent, ScrollLayersEvent, LensMoveEvent,
                               LensConfigureEvent>;

struct InputEvent {
  EventBody body;
  // Per-user client counter; 0 disables the replay check.
  std::uint64_t event_no = 0;
};

std::string_view kind_name(const InputEvent& e);
const UserId& user_of(const InputEvent& e);

// {"kind": "select", "user": ..., ...}. Throws Error(kMalformedEvent).
json to_json(const InputEvent& e);
InputEvent event_from_json(const json& j);

}  // namespace augview::session
