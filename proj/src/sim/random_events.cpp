#include "augview/sim/random_events.hpp"

#include "augview/common/error.hpp"
#include "augview/session/session.hpp"

namespace augview::sim {

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

const std::string& pick_vis(const session::Workspace& ws, std::mt19937_64& rng) {
  const auto& v = ws.layout().visualizations;
  return v[pick(rng, v.size())].id;
}

data::Filter categorical_filter(const session::Workspace& ws, std::mt19937_64& rng) {
  std::vector<const data::Column*> cats;
  for (const auto& c : ws.table().columns())
    if (c.kind == data::DimensionKind::kCategorical && c.name != "title") cats.push_back(&c);
  if (cats.empty()) return {};
  const auto& col = *cats[pick(rng, cats.size())];
  const auto row = pick(rng, ws.table().row_count());
  if (col.missing(static_cast<data::RowId>(row))) return {};
  return data::Filter{{data::Clause{col.name, data::CompareOp::kEq, {col.text[row]}}}};
}

}  // namespace

session::InputEvent random_event(const json& state, const session::Workspace& ws, const std::string& user,
                                 std::mt19937_64& rng) {
  using namespace session;
  const auto& users = state.at("users");
  if (!users.contains(user)) {
    JoinEvent e{user, std::nullopt};
    if (pick(rng, 2) == 0) {
      spatial::Pose pose;
      pose.user = user;
      pose.position = {uniform(rng) * ws.display().width_m, 0.8 + uniform(rng), 0.3 + 5.0 * uniform(rng)};
      e.pose = pose;
    }
    return {e};
  }
  const auto& me = users[user];
  const auto& cfg = ws.display();
  const auto rows = ws.table().row_count();
  switch (pick(rng, 16)) {
    case 0:
    case 1:
      return {PoseUpdateEvent{user,
                              {uniform(rng) * cfg.width_m, 0.8 + uniform(rng), 0.2 + 5.0 * uniform(rng)},
                              {uniform(rng) - 0.5, 0.0, -1.0}}};
    case 2:
    case 3: {
      SelectEvent e;
      e.user = user;
      e.vis = pick_vis(ws, rng);
      const auto n = 1 + pick(rng, 3);
      for (std::uint64_t i = 0; i < n; ++i) e.rows.insert(static_cast<data::RowId>(pick(rng, rows)));
      e.mode = pick(rng, 3) == 0 ? SelectMode::kToggle : SelectMode::kReplace;
      return {e};
    }
    case 4: {
      SelectEvent e;
      e.user = user;
      e.vis = pick_vis(ws, rng);
      e.where = categorical_filter(ws, rng);
      return {e};
    }
    case 5: {
      const auto& vis_id = pick_vis(ws, rng);
      const auto& marks = ws.marks(vis_id).marks;
      json params{{"on", pick(rng, 4) != 0}};
      if (!marks.empty()) params["mark"] = pick(rng, marks.size());
      if (pick(rng, 2) == 0) params["dimension"] = "genre";
      return {TechniqueToggleEvent{user, vis_id, Technique::kEmbedded, params}};
    }
    case 6:
      return {TechniqueToggleEvent{user, pick_vis(ws, rng), Technique::kHinged, {{"on", pick(rng, 2) == 0}}}};
    case 7:
      return {TechniqueToggleEvent{user, "", Technique::kCurvedScreen, {{"on", pick(rng, 2) == 0}}}};
    case 8: {
      static constexpr const char* kSides[] = {"left", "right", "top", "bottom"};
      return {TechniqueToggleEvent{user, pick_vis(ws, rng), Technique::kExtendedAxis,
                                   {{"side", kSides[pick(rng, 4)]}, {"on", pick(rng, 4) != 0}}}};
    }
    case 9: {
      json stack = json::array();
      const auto n = pick(rng, 4);
      for (std::uint64_t i = 0; i < n; ++i) stack.push_back(data::to_json(categorical_filter(ws, rng)));
      return {TechniqueToggleEvent{user, pick_vis(ws, rng), Technique::kLayers, {{"stack", stack}}}};
    }
    case 10: {
      const auto& toggles = me.at("toggles");
      for (const auto& [vis_id, t] : toggles.items())
        if (!t.at("layer_stack").empty())
          return {ScrollLayersEvent{user, vis_id, pick(rng, 2) == 0 ? 1 : -1}};
      return {TechniqueToggleEvent{user, "", Technique::kLinkFilter,
                                   {{"filter", data::to_json(categorical_filter(ws, rng))}}}};
    }
    case 11:
    case 12: {
      PenStrokeEvent e;
      e.user = user;
      e.vis = pick_vis(ws, rng);
      const auto n = 2 + pick(rng, 4);
      for (std::uint64_t i = 0; i < n; ++i) e.points.push_back({uniform(rng), uniform(rng)});
      return {e};
    }
    case 13: {
      const auto& mine = me.at("annotations");
      if (!mine.empty())
        return {ShareAnnotationEvent{user, mine[pick(rng, mine.size())].at("id").get<std::string>()}};
      return {PoseUpdateEvent{user, {uniform(rng) * cfg.width_m, 1.2, 1.0 + uniform(rng)}, {0.0, 0.0, -1.0}}};
    }
    case 14: {
      const auto& vis_id = pick_vis(ws, rng);
      const auto& r = ws.vis(vis_id).view_rect;
      const Vec2 c{r.x + uniform(rng) * r.w, r.y + uniform(rng) * r.h};
      if (me.at("lenses").contains(vis_id) && pick(rng, 2) == 0) return {LensMoveEvent{user, vis_id, c}};
      LensConfigureEvent e;
      e.user = user;
      e.vis = vis_id;
      e.active = pick(rng, 5) != 0;
      e.center_px = c;
      switch (pick(rng, 3)) {
        case 0: e.mode = LensMode::kFilter; e.filter = categorical_filter(ws, rng); break;
        case 1: e.mode = LensMode::kRemap; e.remap_column = "genre"; break;
        default: e.mode = LensMode::kDeoverlap; break;
      }
      return {e};
    }
    default:
      if (pick(rng, 4) == 0) return {LeaveEvent{user}};
      return {PoseUpdateEvent{user, {uniform(rng) * cfg.width_m, 1.2, 0.5 + 2.0 * uniform(rng)}, {0.0, 0.0, -1.0}}};
  }
}

std::vector<session::InputEvent> random_script(std::shared_ptr<const session::Workspace> ws,
                                               const std::vector<std::string>& users, std::size_t count,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto state = session::initial_state(ws);
  auto view = session::to_json(state);
  std::vector<session::InputEvent> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts < count * 20) {
    ++attempts;
    const auto& user = users[pick(rng, users.size())];
    auto event = random_event(view, *ws, user, rng);
    try {
      auto result = session::apply_event(state, event);
      state = std::move(result.state);
      session::apply_delta(view, result.delta);
    } catch (const Error&) {
      continue;
    }
    out.push_back(std::move(event));
  }
  return out;
}

}  // namespace augview::sim
