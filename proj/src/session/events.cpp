#include "augview/session/events.hpp"

#include <type_traits>

#include "augview/common/error.hpp"

namespace augview::session {

namespace {

template <class>
inline constexpr bool kAlwaysFalse = false;

json vec2_json(Vec2 v) { return json::array({v.x, v.y}); }
json vec3_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

Vec2 vec2_of(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kMalformedEvent, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 vec3_of(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::kMalformedEvent, "expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string_view mode_name(SelectMode m) { return m == SelectMode::kToggle ? "toggle" : "replace"; }

SelectMode mode_of(const std::string& s) {
  if (s == "replace") return SelectMode::kReplace;
  if (s == "toggle") return SelectMode::kToggle;
  throw Error(ErrorCode::kMalformedEvent, "unknown select mode '" + s + "'");
}

EventBody body_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  auto user = j.at("user").get<std::string>();
  if (user.empty()) throw Error(ErrorCode::kMalformedEvent, "empty user id");
  if (kind == "join") {
    JoinEvent e{user, std::nullopt};
    if (j.contains("pose")) {
      auto pose = spatial::pose_from_json(j["pose"]);
      pose.user = user;
      e.pose = pose;
    }
    return e;
  }
  if (kind == "leave") return LeaveEvent{user};
  if (kind == "pose_update") {
    PoseUpdateEvent e{user, vec3_of(j.at("position"))};
    if (j.contains("facing")) e.facing = vec3_of(j["facing"]);
    return e;
  }
  if (kind == "select") {
    SelectEvent e;
    e.user = user;
    e.vis = j.at("vis").get<std::string>();
    if (j.contains("rows")) e.rows = j["rows"].get<vis::RowSet>();
    if (j.contains("where")) e.where = data::filter_from_json(j["where"]);
    if (j.contains("mode")) e.mode = mode_of(j["mode"].get<std::string>());
    return e;
  }
  if (kind == "technique_toggle") {
    TechniqueToggleEvent e{user, j.value("vis", std::string{}),
                           technique_from_string(j.at("technique").get<std::string>())};
    if (j.contains("params")) {
      if (!j["params"].is_object()) throw Error(ErrorCode::kMalformedEvent, "params must be an object");
      e.params = j["params"];
    }
    return e;
  }
  if (kind == "pen_stroke") {
    PenStrokeEvent e;
    e.user = user;
    e.vis = j.at("vis").get<std::string>();
    for (const auto& p : j.at("points")) e.points.push_back(vec2_of(p));
    return e;
  }
  if (kind == "share_annotation") return ShareAnnotationEvent{user, j.at("stroke").get<std::string>()};
  if (kind == "scroll_layers") return ScrollLayersEvent{user, j.at("vis").get<std::string>(), j.value("delta", 1)};
  if (kind == "lens_move")
    return LensMoveEvent{user, j.at("vis").get<std::string>(), vec2_of(j.at("center"))};
  if (kind == "lens_configure") {
    LensConfigureEvent e;
    e.user = user;
    e.vis = j.at("vis").get<std::string>();
    e.active = j.value("active", true);
    if (j.contains("center")) e.center_px = vec2_of(j["center"]);
    if (j.contains("radius_px")) e.radius_px = j["radius_px"].get<double>();
    if (j.contains("mode")) e.mode = lens_mode_from_string(j["mode"].get<std::string>());
    if (j.contains("filter")) e.filter = data::filter_from_json(j["filter"]);
    e.remap_column = j.value("remap_column", std::string{});
    return e;
  }
  throw Error(ErrorCode::kMalformedEvent, "unknown event kind '" + kind + "'");
}

}  // namespace

std::string_view to_string(Technique t) {
  switch (t) {
    case Technique::kEmbedded: return "embedded";
    case Technique::kHinged: return "hinged";
    case Technique::kCurvedScreen: return "curved_screen";
    case Technique::kExtendedAxis: return "extended_axis";
    case Technique::kLayers: return "layers";
    case Technique::kLinkFilter: return "link_filter";
  }
  return "hinged";
}

Technique technique_from_string(std::string_view s) {
  for (auto t : {Technique::kEmbedded, Technique::kHinged, Technique::kCurvedScreen, Technique::kExtendedAxis,
                 Technique::kLayers, Technique::kLinkFilter})
    if (to_string(t) == s) return t;
  throw Error(ErrorCode::kMalformedEvent, "unknown technique '" + std::string(s) + "'");
}

std::string_view kind_name(const InputEvent& e) {
  return std::visit(
      [](const auto& b) -> std::string_view {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, JoinEvent>) return "join";
        else if constexpr (std::is_same_v<T, LeaveEvent>) return "leave";
        else if constexpr (std::is_same_v<T, PoseUpdateEvent>) return "pose_update";
        else if constexpr (std::is_same_v<T, SelectEvent>) return "select";
        else if constexpr (std::is_same_v<T, TechniqueToggleEvent>) return "technique_toggle";
        else if constexpr (std::is_same_v<T, PenStrokeEvent>) return "pen_stroke";
        else if constexpr (std::is_same_v<T, ShareAnnotationEvent>) return "share_annotation";
        else if constexpr (std::is_same_v<T, ScrollLayersEvent>) return "scroll_layers";
        else if constexpr (std::is_same_v<T, LensMoveEvent>) return "lens_move";
        else if constexpr (std::is_same_v<T, LensConfigureEvent>) return "lens_configure";
        else static_assert(kAlwaysFalse<T>);
      },
      e.body);
}

const UserId& user_of(const InputEvent& e) {
  return std::visit([](const auto& b) -> const UserId& { return b.user; }, e.body);
}

json to_json(const InputEvent& e) {
  json j{{"kind", kind_name(e)}, {"user", user_of(e)}};
  if (e.event_no != 0) j["event_no"] = e.event_no;
  std::visit(
      [&j](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, JoinEvent>) {
          if (b.pose) j["pose"] = spatial::to_json(*b.pose);
        } else if constexpr (std::is_same_v<T, PoseUpdateEvent>) {
          j["position"] = vec3_json(b.position);
          j["facing"] = vec3_json(b.facing);
        } else if constexpr (std::is_same_v<T, SelectEvent>) {
          j["vis"] = b.vis;
          j["rows"] = b.rows;
          if (b.where) j["where"] = data::to_json(*b.where);
          j["mode"] = mode_name(b.mode);
        } else if constexpr (std::is_same_v<T, TechniqueToggleEvent>) {
          j["vis"] = b.vis;
          j["technique"] = to_string(b.technique);
          j["params"] = b.params;
        } else if constexpr (std::is_same_v<T, PenStrokeEvent>) {
          j["vis"] = b.vis;
          j["points"] = json::array();
          for (auto p : b.points) j["points"].push_back(vec2_json(p));
        } else if constexpr (std::is_same_v<T, ShareAnnotationEvent>) {
          j["stroke"] = b.stroke_id;
        } else if constexpr (std::is_same_v<T, ScrollLayersEvent>) {
          j["vis"] = b.vis;
          j["delta"] = b.delta;
        } else if constexpr (std::is_same_v<T, LensMoveEvent>) {
          j["vis"] = b.vis;
          j["center"] = vec2_json(b.center_px);
        } else if constexpr (std::is_same_v<T, LensConfigureEvent>) {
          j["vis"] = b.vis;
          j["active"] = b.active;
          if (b.center_px) j["center"] = vec2_json(*b.center_px);
          if (b.radius_px) j["radius_px"] = *b.radius_px;
          j["mode"] = to_string(b.mode);
          j["filter"] = data::to_json(b.filter);
          j["remap_column"] = b.remap_column;
        }
      },
      e.body);
  return j;
}

InputEvent event_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kMalformedEvent, "event must be an object");
  try {
    InputEvent e{body_from_json(j)};
    e.event_no = j.value("event_no", std::uint64_t{0});
    return e;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kMalformedEvent) throw;
    throw Error(ErrorCode::kMalformedEvent, err.what());
  } catch (const json::exception& err) {
    throw Error(ErrorCode::kMalformedEvent, err.what());
  }
}

}  // namespace augview::session
