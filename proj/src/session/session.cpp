#include "augview/session/session.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "augview/common/error.hpp"

namespace augview::session {

namespace {

bool finite(Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Filters carried by events are validated up front; any fault is a malformed event.
data::Filter checked_filter(const data::Filter& f, const data::DataTable& table) {
  try {
    (void)data::compile(f, table);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedEvent, e.what());
  }
  return f;
}

data::Filter filter_param(const json& j, const data::DataTable& table) {
  try {
    return checked_filter(data::filter_from_json(j), table);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedEvent, e.what());
  }
}

bool on_param(const json& params) {
  const auto it = params.find("on");
  if (it == params.end()) return true;
  if (!it->is_boolean()) throw Error(ErrorCode::kMalformedEvent, "'on' must be a boolean");
  return it->get<bool>();
}

class Transition {
 public:
  Transition(SessionState& state, const Workspace& ws) : s_(state), ws_(ws) {}

  UserState& user(const UserId& id) {
    const auto it = s_.users.find(id);
    if (it == s_.users.end()) throw Error(ErrorCode::kUnknownUser, "no user '" + id + "'");
    return it->second;
  }

  void operator()(const JoinEvent& e) {
    if (e.user == kPublicLayer) throw Error(ErrorCode::kMalformedEvent, "user id 'public' is reserved");
    if (s_.users.contains(e.user)) throw Error(ErrorCode::kUserExists, "user '" + e.user + "' already joined");
    UserState u;
    u.id = e.user;
    const auto& cfg = ws_.display();
    u.pose.position = {cfg.width_m / 2.0, cfg.height_m / 2.0, 2.0};
    if (e.pose) {
      if (!e.pose->position.finite()) throw Error(ErrorCode::kMalformedEvent, "non-finite position");
      u.pose.position = e.pose->position;
      u.pose.facing = spatial::normalized_facing(e.pose->facing);
    }
    u.pose.user = e.user;
    u.pen_color = std::string(kPenPalette[s_.joins % std::size(kPenPalette)]);
    ++s_.joins;
    s_.users.emplace(e.user, std::move(u));
  }

  void operator()(const LeaveEvent& e) {
    user(e.user);
    s_.users.erase(e.user);
  }

  void operator()(const PoseUpdateEvent& e) {
    auto& u = user(e.user);
    if (!e.position.finite()) throw Error(ErrorCode::kMalformedEvent, "non-finite position");
    u.pose.position = e.position;
    u.pose.facing = spatial::normalized_facing(e.facing);
  }

  void operator()(const SelectEvent& e) {
    auto& u = user(e.user);
    ws_.vis(e.vis);
    const auto& table = ws_.table();
    vis::RowSet rows;
    for (auto r : e.rows) {
      if (r >= table.row_count()) throw Error(ErrorCode::kMalformedEvent, "row " + std::to_string(r) + " out of range");
      rows.insert(r);
    }
    if (e.where) {
      const auto pred = data::compile(checked_filter(*e.where, table), table);
      for (data::RowId r = 0; r < table.row_count(); ++r)
        if (pred(r)) rows.insert(r);
    }
    auto& current = u.selections[e.vis];
    if (e.mode == SelectMode::kReplace) {
      current = std::move(rows);
    } else {
      for (auto r : rows)
        if (!current.erase(r)) current.insert(r);
    }
    if (current.empty()) u.selections.erase(e.vis);
  }

  void operator()(const TechniqueToggleEvent& e) {
    auto& u = user(e.user);
    const auto& p = e.params;
    try {
      switch (e.technique) {
        case Technique::kCurvedScreen: u.curved_screen = on_param(p); return;
        case Technique::kLinkFilter:
          u.link_filter = p.contains("filter") ? filter_param(p["filter"], ws_.table()) : data::Filter{};
          return;
        default: break;
      }
      ws_.vis(e.vis);
      auto& t = u.toggles[e.vis];
      switch (e.technique) {
        case Technique::kEmbedded: embedded(t, e.vis, p); break;
        case Technique::kHinged: t.hinged = on_param(p); break;
        case Technique::kExtendedAxis: extended_axis(t, e.vis, p); break;
        case Technique::kLayers: layers(u, t, e.vis, p); break;
        default: break;
      }
      if (t.empty()) u.toggles.erase(e.vis);
    } catch (const json::exception& err) {
      throw Error(ErrorCode::kMalformedEvent, err.what());
    }
  }

  void operator()(const PenStrokeEvent& e) {
    auto& u = user(e.user);
    ws_.vis(e.vis);
    if (e.points.size() < 2) throw Error(ErrorCode::kMalformedEvent, "a stroke needs at least two points");
    if (!std::all_of(e.points.begin(), e.points.end(), [](Vec2 p) {
          return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
        }))
      throw Error(ErrorCode::kMalformedEvent, "stroke points must lie in the unit square of the chart");
    u.annotations.push_back(
        Stroke{"s" + std::to_string(s_.seq + 1), u.id, e.vis, e.points, u.pen_color, false});
  }

  void operator()(const ShareAnnotationEvent& e) {
    auto& u = user(e.user);
    const auto it = std::find_if(u.annotations.begin(), u.annotations.end(),
                                 [&](const Stroke& s) { return s.id == e.stroke_id; });
    if (it == u.annotations.end()) {
      const bool already = std::any_of(s_.public_strokes.begin(), s_.public_strokes.end(), [&](const Stroke& s) {
        return s.id == e.stroke_id && s.owner == u.id;
      });
      if (already) return;
      throw Error(ErrorCode::kUnknownStroke, "no stroke '" + e.stroke_id + "' owned by '" + u.id + "'");
    }
    Stroke shared = *it;
    shared.shared = true;
    u.annotations.erase(it);
    s_.public_strokes.push_back(std::move(shared));
  }

  void operator()(const ScrollLayersEvent& e) {
    auto& u = user(e.user);
    ws_.vis(e.vis);
    const auto t = u.toggles.find(e.vis);
    if (t == u.toggles.end() || t->second.layer_stack.empty())
      throw Error(ErrorCode::kEmptyStack, "no layers on '" + e.vis + "'");
    const int n = static_cast<int>(t->second.layer_stack.size());
    const int next = ((u.layer_scroll[e.vis] + e.delta) % n + n) % n;
    u.layer_scroll[e.vis] = next;
  }

  void operator()(const LensMoveEvent& e) {
    auto& u = user(e.user);
    ws_.vis(e.vis);
    const auto it = u.lenses.find(e.vis);
    if (it == u.lenses.end()) throw Error(ErrorCode::kUnknownLens, "no lens on '" + e.vis + "'");
    if (!finite(e.center_px)) throw Error(ErrorCode::kMalformedEvent, "non-finite lens center");
    it->second.center_px = e.center_px;
  }

  void operator()(const LensConfigureEvent& e) {
    auto& u = user(e.user);
    const auto& spec = ws_.vis(e.vis);
    if (!e.active) {
      if (!u.lenses.erase(e.vis)) throw Error(ErrorCode::kUnknownLens, "no lens on '" + e.vis + "'");
      return;
    }
    LensState lens;
    if (const auto it = u.lenses.find(e.vis); it != u.lenses.end()) {
      lens = it->second;
    } else {
      lens.vis_id = e.vis;
      lens.center_px = spec.view_rect.center();
      lens.radius_px = ws_.params().lens_radius_px;
    }
    if (e.center_px) {
      if (!finite(*e.center_px)) throw Error(ErrorCode::kMalformedEvent, "non-finite lens center");
      lens.center_px = *e.center_px;
    }
    if (e.radius_px) {
      if (!(*e.radius_px > 0.0) || !std::isfinite(*e.radius_px))
        throw Error(ErrorCode::kMalformedEvent, "lens radius must be positive");
      lens.radius_px = *e.radius_px;
    }
    lens.mode = e.mode;
    lens.filter = checked_filter(e.filter, ws_.table());
    lens.remap_column = e.remap_column;
    if (lens.mode == LensMode::kRemap) {
      const auto* col = ws_.table().find(lens.remap_column);
      if (col == nullptr || col->kind != data::DimensionKind::kCategorical)
        throw Error(ErrorCode::kMalformedEvent, "remap lens needs a categorical column");
    }
    u.lenses[e.vis] = std::move(lens);
  }

 private:
  void embedded(VisToggles& t, const std::string& vis_id, const json& p) {
    const auto& marks = ws_.marks(vis_id);
    const bool on = on_param(p);
    if (p.contains("dimension")) {
      const auto dim = p["dimension"].get<std::string>();
      if (ws_.table().find(dim) == nullptr) throw Error(ErrorCode::kMalformedEvent, "no column '" + dim + "'");
      t.embed_dimension = dim;
    }
    std::optional<std::uint32_t> mark;
    if (p.contains("mark")) {
      const auto idx = p["mark"].get<std::uint32_t>();
      if (idx >= marks.marks.size()) throw Error(ErrorCode::kMalformedEvent, "mark index out of range");
      mark = idx;
    } else if (p.contains("category")) {
      const auto cat = p["category"].get<std::string>();
      for (const auto& m : marks.marks)
        if (m.category == cat) mark = m.index;
      if (!mark) throw Error(ErrorCode::kMalformedEvent, "no mark for category '" + cat + "'");
    }
    if (mark) {
      if (on) t.embedded_marks.insert(*mark);
      else t.embedded_marks.erase(*mark);
    } else if (!on) {
      t.embedded_marks.clear();
    } else {
      throw Error(ErrorCode::kMalformedEvent, "embedded needs 'mark' or 'category'");
    }
    if (t.embedded_marks.empty()) t.embed_dimension.clear();
  }

  void extended_axis(VisToggles& t, const std::string& vis_id, const json& p) {
    const auto side = vis::axis_side_from_string(p.at("side").get<std::string>());
    const bool on = on_param(p);
    if (on) {
      const auto* axis = ws_.marks(vis_id).edge_axis(side);
      const auto* col = axis == nullptr ? nullptr : ws_.table().find(axis->column);
      if (col == nullptr || axis->categorical || !col->is_quantitative())
        throw Error(ErrorCode::kNonNumericAxis,
                    "'" + vis_id + "' has no numeric axis on side " + std::string(vis::to_string(side)));
      t.extended_axes.insert(side);
      if (p.contains("bins")) {
        const auto bins = p["bins"].get<std::size_t>();
        if (bins == 0) throw Error(ErrorCode::kMalformedEvent, "bins must be positive");
        t.axis_bins = bins;
      }
    } else {
      t.extended_axes.erase(side);
    }
    if (t.extended_axes.empty()) t.axis_bins = 0;
  }

  void layers(UserState& u, VisToggles& t, const std::string& vis_id, const json& p) {
    t.layer_stack.clear();
    for (const auto& f : p.value("stack", json::array())) t.layer_stack.push_back(filter_param(f, ws_.table()));
    if (t.layer_stack.empty()) u.layer_scroll.erase(vis_id);
    else u.layer_scroll[vis_id] = 0;
  }

  SessionState& s_;
  const Workspace& ws_;
};

json user_changes(const json& before, const json& after) {
  json out = json::object();
  for (const auto& [key, value] : after.items())
    if (!before.contains(key) || before[key] != value) out[key] = value;
  return out;
}

// The parts of the state an event of `uid` can change: the top-level fields
// and that user. Diffing these equals diffing the whole state.
json touched(const SessionState& s, const UserId& uid) {
  json j = to_json(SessionState{s.workspace, {}, s.public_strokes, s.seq, s.joins});
  if (const auto it = s.users.find(uid); it != s.users.end()) j["users"][uid] = to_json(it->second);
  return j;
}

}  // namespace

ApplyResult apply_event(const SessionState& state, const InputEvent& event) {
  SessionState next = state;
  Transition step(next, *state.workspace);
  const auto& uid = user_of(event);
  if (!std::holds_alternative<JoinEvent>(event.body)) {
    const auto& u = step.user(uid);
    if (event.event_no != 0 && event.event_no <= u.event_no)
      throw Error(ErrorCode::kStaleEvent, "event " + std::to_string(event.event_no) + " from '" + uid +
                                              "' after " + std::to_string(u.event_no));
  }
  std::visit(step, event.body);
  if (const auto it = next.users.find(uid); it != next.users.end() && event.event_no != 0)
    it->second.event_no = event.event_no;
  ++next.seq;
  auto delta = diff_states(touched(state, uid), touched(next, uid), to_json(event));
  return {std::move(next), std::move(delta)};
}

Delta diff_states(const json& before, const json& after, const json& event) {
  Delta d;
  d.base_seq = before.at("seq").get<std::uint64_t>();
  d.seq = after.at("seq").get<std::uint64_t>();
  d.event = event;
  for (const auto& [key, value] : after.items()) {
    if (key == "seq" || key == "users") continue;
    if (before.at(key) != value) d.changes[key] = value;
  }
  json users = json::object();
  const auto& bu = before.at("users");
  const auto& au = after.at("users");
  for (const auto& [id, u] : au.items()) {
    if (!bu.contains(id)) users[id] = u;
    else if (auto c = user_changes(bu[id], u); !c.empty()) users[id] = std::move(c);
  }
  for (const auto& [id, u] : bu.items())
    if (!au.contains(id)) users[id] = nullptr;
  if (!users.empty()) d.changes["users"] = std::move(users);
  return d;
}

bool apply_delta(json& state, const Delta& delta) {
  if (!state.contains("seq") || state["seq"].get<std::uint64_t>() != delta.base_seq) return false;
  for (const auto& [key, value] : delta.changes.items()) {
    if (key != "users") {
      state[key] = value;
      continue;
    }
    auto& users = state["users"];
    for (const auto& [id, u] : value.items()) {
      if (u.is_null()) users.erase(id);
      else if (!users.contains(id)) users[id] = u;
      else
        for (const auto& [field, v] : u.items()) users[id][field] = v;
    }
  }
  state["seq"] = delta.seq;
  return true;
}

json to_json(const Delta& d) {
  return json{{"base_seq", d.base_seq}, {"seq", d.seq}, {"event", d.event}, {"changes", d.changes}};
}

Delta delta_from_json(const json& j) {
  Delta d;
  d.base_seq = j.at("base_seq").get<std::uint64_t>();
  d.seq = j.at("seq").get<std::uint64_t>();
  d.event = j.at("event");
  d.changes = j.at("changes");
  return d;
}

std::string_view to_string(ItemKind k) {
  switch (k) {
    case ItemKind::kVisualization: return "visualization";
    case ItemKind::kStroke: return "stroke";
    case ItemKind::kSelection: return "selection";
    case ItemKind::kLens: return "lens";
    case ItemKind::kToggle: return "toggle";
  }
  return "visualization";
}

std::vector<ItemRef> public_items(const SessionState& state) {
  const std::string layer(kPublicLayer);
  std::vector<ItemRef> out;
  for (const auto& v : state.workspace->layout().visualizations)
    out.push_back({ItemKind::kVisualization, v.id, layer});
  for (const auto& s : state.public_strokes) out.push_back({ItemKind::kStroke, s.id, layer});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ItemRef> personal_items(const SessionState& state, const UserId& user) {
  const auto& u = state.user(user);
  std::vector<ItemRef> out;
  for (const auto& s : u.annotations) out.push_back({ItemKind::kStroke, s.id, u.id});
  for (const auto& [v, rows] : u.selections) out.push_back({ItemKind::kSelection, v, u.id});
  for (const auto& [v, l] : u.lenses) out.push_back({ItemKind::kLens, v, u.id});
  for (const auto& [v, t] : u.toggles) out.push_back({ItemKind::kToggle, v, u.id});
  if (u.curved_screen) out.push_back({ItemKind::kToggle, "*curved", u.id});
  if (!u.link_filter.empty()) out.push_back({ItemKind::kToggle, "*link_filter", u.id});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ItemRef> visible_items(const SessionState& state, const UserId& viewer) {
  auto out = personal_items(state, viewer);
  const auto pub = public_items(state);
  out.insert(out.end(), pub.begin(), pub.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace augview::session
