#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "augview/common/canonical_json.hpp"
#include "augview/common/geometry.hpp"
#include "augview/data/filter.hpp"
#include "augview/session/layout.hpp"
#include "augview/spatial/pose.hpp"
#include "augview/vis/marks.hpp"

namespace augview::session {

using UserId = std::string;

// Layer name of shared content.
inline constexpr std::string_view kPublicLayer = "public";

// Pen colors handed out in join order.
inline constexpr std::string_view kPenPalette[] = {"#2ca02c", "#1f77b4", "#d62728",
                                                   "#ff7f0e", "#9467bd", "#8c564b"};

struct Stroke {
  std::string id;
  UserId owner;
  std::string vis_id;
  std::vector<Vec2> points;  // view-normalized, at least two
  std::string color;
  bool shared = false;
};

enum class LensMode { kFilter, kRemap, kDeoverlap };
std::string_view to_string(LensMode mode);
LensMode lens_mode_from_string(std::string_view s);

struct LensState {
  std::string vis_id;
  Vec2 center_px;
  double radius_px = 180.0;
  LensMode mode = LensMode::kFilter;
  data::Filter filter;
  std::string remap_column;
};

// Per-chart technique settings of one analyst.
struct VisToggles {
  std::set<std::uint32_t> embedded_marks;
  std::string embed_dimension;
  bool hinged = false;
  std::set<vis::AxisSide> extended_axes;
  std::size_t axis_bins = 0;  // 0 uses the engine default
  std::vector<data::Filter> layer_stack;

  bool empty() const {
    return embedded_marks.empty() && !hinged && extended_axes.empty() && layer_stack.empty();
  }
};

struct UserState {
  UserId id;
  spatial::Pose pose;
  std::string pen_color;
  std::map<std::string, vis::RowSet> selections;  // per chart, never empty
  std::vector<Stroke> annotations;                // unshared strokes
  std::map<std::string, LensState> lenses;        // at most one per chart
  std::map<std::string, VisToggles> toggles;
  std::map<std::string, int> layer_scroll;
  bool curved_screen = false;
  data::Filter link_filter;
  // Number of the last applied client event; older numbers are replays.
  std::uint64_t event_no = 0;
};

struct SessionState {
  std::shared_ptr<const Workspace> workspace;
  std::map<UserId, UserState> users;
  std::vector<Stroke> public_strokes;
  std::uint64_t seq = 0;
  std::uint32_t joins = 0;

  const UserState& user(std::string_view id) const;  // throws Error(kUnknownUser)
};

SessionState initial_state(std::shared_ptr<const Workspace> workspace);

// Serialization of the mutable part of the state; the workspace is shared out of band.
json to_json(const SessionState& state);
json to_json(const UserState& user);
json to_json(const Stroke& stroke);
SessionState state_from_json(const json& j, std::shared_ptr<const Workspace> workspace);

}  // namespace augview::session
