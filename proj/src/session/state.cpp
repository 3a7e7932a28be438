#include "augview/session/state.hpp"

#include "augview/common/error.hpp"

namespace augview::session {

namespace {

json points_to_json(const std::vector<Vec2>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back({p.x, p.y});
  return out;
}

std::vector<Vec2> points_from_json(const json& j) {
  std::vector<Vec2> out;
  for (const auto& p : j) out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return out;
}

Stroke stroke_from_json(const json& j) {
  Stroke s;
  s.id = j.at("id").get<std::string>();
  s.owner = j.at("owner").get<std::string>();
  s.vis_id = j.at("vis").get<std::string>();
  s.points = points_from_json(j.at("points"));
  s.color = j.at("color").get<std::string>();
  s.shared = j.at("shared").get<bool>();
  return s;
}

json toggles_to_json(const VisToggles& t) {
  json axes = json::array();
  for (auto side : t.extended_axes) axes.push_back(vis::to_string(side));
  json stack = json::array();
  for (const auto& f : t.layer_stack) stack.push_back(data::to_json(f));
  return json{{"embedded_marks", t.embedded_marks}, {"embed_dimension", t.embed_dimension},
              {"hinged", t.hinged},                 {"extended_axes", std::move(axes)},
              {"axis_bins", t.axis_bins},           {"layer_stack", std::move(stack)}};
}

VisToggles toggles_from_json(const json& j) {
  VisToggles t;
  t.embedded_marks = j.at("embedded_marks").get<std::set<std::uint32_t>>();
  t.embed_dimension = j.at("embed_dimension").get<std::string>();
  t.hinged = j.at("hinged").get<bool>();
  for (const auto& s : j.at("extended_axes")) t.extended_axes.insert(vis::axis_side_from_string(s.get<std::string>()));
  t.axis_bins = j.at("axis_bins").get<std::size_t>();
  for (const auto& f : j.at("layer_stack")) t.layer_stack.push_back(data::filter_from_json(f));
  return t;
}

json lens_to_json(const LensState& l) {
  return json{{"vis", l.vis_id},       {"center", {l.center_px.x, l.center_px.y}},
              {"radius_px", l.radius_px}, {"mode", to_string(l.mode)},
              {"filter", data::to_json(l.filter)}, {"remap_column", l.remap_column}};
}

LensState lens_from_json(const json& j) {
  LensState l;
  l.vis_id = j.at("vis").get<std::string>();
  l.center_px = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
  l.radius_px = j.at("radius_px").get<double>();
  l.mode = lens_mode_from_string(j.at("mode").get<std::string>());
  l.filter = data::filter_from_json(j.at("filter"));
  l.remap_column = j.at("remap_column").get<std::string>();
  return l;
}

UserState user_from_json(const json& j) {
  UserState u;
  u.id = j.at("id").get<std::string>();
  u.pose = spatial::pose_from_json(j.at("pose"));
  u.pose.user = u.id;
  u.pen_color = j.at("pen_color").get<std::string>();
  for (const auto& [vis_id, rows] : j.at("selections").items()) u.selections[vis_id] = rows.get<vis::RowSet>();
  for (const auto& s : j.at("annotations")) u.annotations.push_back(stroke_from_json(s));
  for (const auto& [vis_id, l] : j.at("lenses").items()) u.lenses[vis_id] = lens_from_json(l);
  for (const auto& [vis_id, t] : j.at("toggles").items()) u.toggles[vis_id] = toggles_from_json(t);
  for (const auto& [vis_id, n] : j.at("layer_scroll").items()) u.layer_scroll[vis_id] = n.get<int>();
  u.curved_screen = j.at("curved_screen").get<bool>();
  u.link_filter = data::filter_from_json(j.at("link_filter"));
  u.event_no = j.at("event_no").get<std::uint64_t>();
  return u;
}

}  // namespace

std::string_view to_string(LensMode mode) {
  switch (mode) {
    case LensMode::kFilter: return "filter";
    case LensMode::kRemap: return "remap";
    case LensMode::kDeoverlap: return "deoverlap";
  }
  return "filter";
}

LensMode lens_mode_from_string(std::string_view s) {
  if (s == "filter") return LensMode::kFilter;
  if (s == "remap") return LensMode::kRemap;
  if (s == "deoverlap") return LensMode::kDeoverlap;
  throw Error(ErrorCode::kMalformedEvent, "unknown lens mode '" + std::string(s) + "'");
}

const UserState& SessionState::user(std::string_view id) const {
  const auto it = users.find(std::string(id));
  if (it == users.end()) throw Error(ErrorCode::kUnknownUser, "no user '" + std::string(id) + "'");
  return it->second;
}

SessionState initial_state(std::shared_ptr<const Workspace> workspace) {
  SessionState s;
  s.workspace = std::move(workspace);
  return s;
}

json to_json(const Stroke& s) {
  return json{{"id", s.id},         {"owner", s.owner}, {"vis", s.vis_id}, {"points", points_to_json(s.points)},
              {"color", s.color}, {"shared", s.shared}};
}

json to_json(const UserState& u) {
  json selections = json::object();
  for (const auto& [v, rows] : u.selections) selections[v] = rows;
  json annotations = json::array();
  for (const auto& s : u.annotations) annotations.push_back(to_json(s));
  json lenses = json::object();
  for (const auto& [v, l] : u.lenses) lenses[v] = lens_to_json(l);
  json toggles = json::object();
  for (const auto& [v, t] : u.toggles) toggles[v] = toggles_to_json(t);
  json scroll = json::object();
  for (const auto& [v, n] : u.layer_scroll) scroll[v] = n;
  return json{{"id", u.id},
              {"pose", spatial::to_json(u.pose)},
              {"pen_color", u.pen_color},
              {"selections", std::move(selections)},
              {"annotations", std::move(annotations)},
              {"lenses", std::move(lenses)},
              {"toggles", std::move(toggles)},
              {"layer_scroll", std::move(scroll)},
              {"curved_screen", u.curved_screen},
              {"link_filter", data::to_json(u.link_filter)},
              {"event_no", u.event_no}};
}

json to_json(const SessionState& state) {
  json users = json::object();
  for (const auto& [id, u] : state.users) users[id] = to_json(u);
  json strokes = json::array();
  for (const auto& s : state.public_strokes) strokes.push_back(to_json(s));
  return json{{"seq", state.seq}, {"joins", state.joins}, {"users", std::move(users)},
              {"public_strokes", std::move(strokes)}};
}

SessionState state_from_json(const json& j, std::shared_ptr<const Workspace> workspace) {
  SessionState s;
  s.workspace = std::move(workspace);
  s.seq = j.at("seq").get<std::uint64_t>();
  s.joins = j.at("joins").get<std::uint32_t>();
  for (const auto& [id, u] : j.at("users").items()) s.users[id] = user_from_json(u);
  for (const auto& st : j.at("public_strokes")) s.public_strokes.push_back(stroke_from_json(st));
  return s;
}

}  // namespace augview::session
