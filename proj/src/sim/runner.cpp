#include "augview/sim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "augview/augmentation/compose.hpp"
#include "augview/common/error.hpp"
#include "augview/sim/oracles.hpp"
#include "augview/sim/random_events.hpp"

namespace augview::sim {

namespace {

using augmentation::NodeKind;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

template <class T>
std::string list(const T& values) {
  std::string out = "[";
  for (const auto& v : values) {
    if (out.size() > 1) out += ",";
    out += std::to_string(v);
  }
  return out + "]";
}

const augmentation::AugmentationNode* find_node(const augmentation::ARScene& scene, const std::string& id) {
  for (const auto& n : scene.nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::optional<NodeKind> kind_from_string(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(NodeKind::kAnnotation); ++k)
    if (augmentation::to_string(static_cast<NodeKind>(k)) == s) return static_cast<NodeKind>(k);
  return std::nullopt;
}

std::string mark_id(std::uint32_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%05u", i);
  return buf;
}

// Mark of a chart addressed by "mark" index or "category" text.
std::uint32_t resolve_mark(const json& a, const session::Workspace& ws, const std::string& vis_id) {
  const auto& marks = ws.marks(vis_id).marks;
  if (a.contains("mark")) return a["mark"].get<std::uint32_t>();
  const auto cat = a.at("category").get<std::string>();
  for (const auto& m : marks)
    if (m.category == cat) return m.index;
  throw Error(ErrorCode::kScenarioParseError, "no mark with category '" + cat + "' in " + vis_id);
}

AssertionResult check(bool ok, std::string detail) { return {0, {}, ok, std::move(detail)}; }

AssertionResult eval_embedded(const json& a, const session::SessionState& state) {
  const auto viewer = a.at("viewer").get<std::string>();
  const auto vis_id = a.at("vis").get<std::string>();
  const auto& ws = *state.workspace;
  const auto idx = resolve_mark(a, ws, vis_id);
  const auto scene = augmentation::compose_user_scene(state, viewer);
  const auto* node = find_node(scene, "embed/" + vis_id + "/" + mark_id(idx));
  if (!node) return check(false, "no embedded node for mark " + std::to_string(idx));
  const auto& p = std::get<augmentation::EmbeddedPayload>(node->payload);
  if (a.contains("dimension") && a["dimension"].get<std::string>() != p.dimension)
    return check(false, "embedded dimension is '" + p.dimension + "'");

  const auto& spec = ws.vis(vis_id);
  const auto& mark = ws.marks(vis_id).marks.at(idx);
  std::vector<data::RowId> rows;
  const bool aggregate = spec.kind == vis::ChartKind::kBar || spec.kind == vis::ChartKind::kPie;
  if (aggregate) {
    const auto& group = ws.table().column(spec.group_by ? *spec.group_by : *spec.binding("x"));
    for (data::RowId r = 0; r < ws.table().row_count(); ++r)
      if (group.text[r] == *mark.category) rows.push_back(r);
  } else {
    rows = mark.row_ids;
  }
  const auto expected = oracle::category_counts(ws.table(), p.dimension, rows);
  std::uint64_t total = 0;
  for (const auto& [c, n] : expected) total += n;
  if (p.segments.size() != expected.size()) return check(false, "segment count " + std::to_string(p.segments.size()));
  const auto& set = ws.marks(vis_id);
  const double depth = set.extrusion_depth > 0.0 ? set.extrusion_depth : ws.params().embed_depth;
  double sum = 0.0;
  std::string detail;
  auto it = expected.begin();
  for (const auto& s : p.segments) {
    if (s.category != it->first || s.count != it->second)
      return check(false, "segment " + s.category + "=" + std::to_string(s.count) + ", oracle " + it->first + "=" +
                              std::to_string(it->second));
    const double want = depth * static_cast<double>(it->second) / static_cast<double>(total);
    if (std::abs(s.depth - want) > 1e-12) return check(false, "segment " + s.category + " depth " + num(s.depth));
    sum += s.depth;
    detail += (detail.empty() ? "" : ",") + s.category + "=" + std::to_string(s.count);
    ++it;
  }
  if (std::abs(sum - depth) > 1e-9) return check(false, "depths sum to " + num(sum));
  if (a.contains("expect")) {
    for (const auto& [cat, n] : a["expect"].items()) {
      const auto e = expected.find(cat);
      if (e == expected.end() || e->second != n.get<std::uint64_t>())
        return check(false, "expected " + cat + "=" + std::to_string(n.get<std::uint64_t>()) + ", got " + detail);
    }
    if (a["expect"].size() != expected.size()) return check(false, "categories " + detail);
  }
  return check(true, detail);
}

AssertionResult eval_histogram(const json& a, const session::SessionState& state) {
  const auto viewer = a.at("viewer").get<std::string>();
  const auto vis_id = a.at("vis").get<std::string>();
  const auto side = a.at("side").get<std::string>();
  const auto& ws = *state.workspace;
  const auto scene = augmentation::compose_user_scene(state, viewer);
  const auto* node = find_node(scene, "axis/" + vis_id + "/" + side);
  if (!node) return check(false, "no axis node on " + side);
  const auto& p = std::get<augmentation::AxisPayload>(node->payload);
  const auto& toggles = state.user(viewer).toggles.at(vis_id);
  const std::size_t bins = toggles.axis_bins > 0 ? toggles.axis_bins : ws.params().axis_bins;
  std::set<data::RowId> rows;
  for (const auto& m : ws.marks(vis_id).marks) rows.insert(m.row_ids.begin(), m.row_ids.end());
  const auto expected = oracle::histogram(ws.table(), p.column, rows, bins);
  if (p.histogram.counts != expected)
    return check(false, "counts " + list(p.histogram.counts) + ", oracle " + list(expected));
  if (a.contains("expect") && a["expect"].get<std::vector<std::uint64_t>>() != expected)
    return check(false, "oracle " + list(expected) + " differs from the scenario's literal counts");
  if (a.contains("folded") && a["folded"].get<bool>() != p.folded)
    return check(false, std::string("strip ") + (p.folded ? "folded" : "planar"));
  return check(true, p.column + " " + list(expected));
}

AssertionResult eval_links(const json& a, const session::SessionState& state) {
  const auto viewer = a.at("viewer").get<std::string>();
  const auto& ws = *state.workspace;
  const auto scene = augmentation::compose_user_scene(state, viewer);
  std::set<oracle::LinkKey> got;
  for (const auto& n : scene.nodes) {
    if (n.kind != NodeKind::kLinkCurve) continue;
    const auto& p = std::get<augmentation::LinkPayload>(n.payload);
    if (!(p.curve.control[0] == ws.mark_world(p.from_vis, p.from_mark)) ||
        !(p.curve.control[3] == ws.mark_world(p.to_vis, p.to_mark)))
      return check(false, "link " + n.id + " does not end on its marks");
    got.emplace(p.from_vis, p.from_mark, p.to_vis, p.to_mark);
  }
  const auto expected = oracle::links(state, viewer);
  const auto cap = ws.params().max_links;
  if (expected.size() <= cap ? got != expected
                             : got.size() != cap || !std::includes(expected.begin(), expected.end(), got.begin(), got.end()))
    return check(false, std::to_string(got.size()) + " links, oracle " + std::to_string(expected.size()));
  if (a.contains("count") && a["count"].get<std::size_t>() != got.size())
    return check(false, std::to_string(got.size()) + " links, scenario expects " +
                            std::to_string(a["count"].get<std::size_t>()));
  return check(true, std::to_string(got.size()) + " links");
}

AssertionResult eval_hinged(const json& a, const session::SessionState& state) {
  const auto viewer = a.at("viewer").get<std::string>();
  const auto vis_id = a.at("vis").get<std::string>();
  const auto scene = augmentation::compose_user_scene(state, viewer);
  const auto* node = find_node(scene, "hinged/" + vis_id);
  const auto expected = oracle::hinge(state, viewer, vis_id);
  const bool want_present = a.value("present", true);
  if (expected.has_value() != want_present)
    return check(false, std::string("oracle says ") + (expected ? "present" : "absent"));
  if ((node != nullptr) != expected.has_value())
    return check(false, std::string("node ") + (node ? "present" : "absent"));
  if (!node) return check(true, "absent");
  const auto& p = std::get<augmentation::HingedPayload>(node->payload);
  if (std::abs(p.angle_deg - expected->angle_deg) > 1e-9 || p.hinge != expected->hinge)
    return check(false, "angle " + num(p.angle_deg) + " hinge " + std::string(spatial::to_string(p.hinge)) +
                            ", oracle " + num(expected->angle_deg));
  if (a.contains("hinge") && a["hinge"].get<std::string>() != spatial::to_string(p.hinge))
    return check(false, "hinge on " + std::string(spatial::to_string(p.hinge)));
  return check(true, "angle " + num(p.angle_deg) + " hinge " + std::string(spatial::to_string(p.hinge)));
}

AssertionResult eval_isolation(const session::SessionState& state) {
  std::size_t checked = 0;
  for (const auto& [viewer, u] : state.users) {
    const auto scene = augmentation::compose_user_scene(state, viewer);
    std::set<std::string> strokes;
    for (const auto& n : scene.nodes) {
      ++checked;
      if (n.owner != viewer && n.owner != session::kPublicLayer)
        return check(false, "node " + n.id + " of " + n.owner + " in the scene of " + viewer);
      if (n.kind == NodeKind::kAnnotation)
        strokes.insert(std::get<augmentation::AnnotationPayload>(n.payload).stroke_id);
    }
    for (const auto& s : state.public_strokes)
      if (!strokes.contains(s.id)) return check(false, "shared stroke " + s.id + " missing for " + viewer);
  }
  return check(true, std::to_string(state.users.size()) + " scenes, " + std::to_string(checked) + " nodes");
}

}  // namespace

AssertionResult evaluate(const json& a, SimNetwork& net) {
  AssertionResult r;
  r.type = a.value("type", std::string{});
  const auto& state = net.server().state();
  try {
    if (r.type == "node_count") {
      const auto scene = augmentation::compose_user_scene(state, a.at("viewer").get<std::string>());
      std::size_t n = scene.nodes.size();
      if (a.contains("kind")) {
        const auto kind = kind_from_string(a["kind"].get<std::string>());
        if (!kind) throw Error(ErrorCode::kScenarioParseError, "unknown node kind");
        n = scene.count(*kind);
      }
      const auto want = a.at("equals").get<std::size_t>();
      r = check(n == want, std::to_string(n) + " nodes, expected " + std::to_string(want));
    } else if (r.type == "scene_kinds") {
      const auto scene = augmentation::compose_user_scene(state, a.at("viewer").get<std::string>());
      const auto& expect = a.at("expect");
      std::string detail;
      bool ok = true;
      for (int k = 0; k <= static_cast<int>(NodeKind::kAnnotation); ++k) {
        const auto kind = static_cast<NodeKind>(k);
        const std::string name(augmentation::to_string(kind));
        const auto got = scene.count(kind);
        const auto want = expect.value(name, std::size_t{0});
        if (got != want) ok = false;
        if (got > 0 || want > 0)
          detail += (detail.empty() ? "" : ",") + name + "=" + std::to_string(got) +
                    (got != want ? "(expected " + std::to_string(want) + ")" : "");
      }
      for (const auto& [name, v] : expect.items())
        if (!kind_from_string(name)) throw Error(ErrorCode::kScenarioParseError, "unknown node kind '" + name + "'");
      r = check(ok, detail.empty() ? "empty scene" : detail);
    } else if (r.type == "embedded_oracle") {
      r = eval_embedded(a, state);
    } else if (r.type == "histogram_oracle") {
      r = eval_histogram(a, state);
    } else if (r.type == "links_oracle") {
      r = eval_links(a, state);
    } else if (r.type == "hinged_oracle") {
      r = eval_hinged(a, state);
    } else if (r.type == "annotation_isolation") {
      r = eval_isolation(state);
    } else if (r.type == "visible_strokes") {
      const auto scene = augmentation::compose_user_scene(state, a.at("viewer").get<std::string>());
      std::size_t total = 0;
      std::size_t shared = 0;
      for (const auto& n : scene.nodes) {
        if (n.kind != NodeKind::kAnnotation) continue;
        ++total;
        if (std::get<augmentation::AnnotationPayload>(n.payload).shared) ++shared;
      }
      const bool ok = total == a.at("count").get<std::size_t>() &&
                      (!a.contains("shared") || shared == a["shared"].get<std::size_t>());
      r = check(ok, std::to_string(total) + " strokes, " + std::to_string(shared) + " shared");
    } else if (r.type == "selection") {
      const auto& u = state.user(a.at("user").get<std::string>());
      const auto vis_id = a.at("vis").get<std::string>();
      const auto it = u.selections.find(vis_id);
      const std::vector<data::RowId> rows =
          it == u.selections.end() ? std::vector<data::RowId>{} : std::vector<data::RowId>(it->second.begin(), it->second.end());
      bool ok = true;
      if (a.contains("rows")) ok = rows == a["rows"].get<std::vector<data::RowId>>();
      if (a.contains("count")) ok = ok && rows.size() == a["count"].get<std::size_t>();
      r = check(ok, "rows " + list(rows));
    } else if (r.type == "consistent") {
      const auto c = consistency_check(net);
      r = check(c.consistent, c.consistent ? "all replicas match" : c.client + " differs at " + c.path);
    } else if (r.type == "node_zone") {
      const auto scene = augmentation::compose_user_scene(state, a.at("viewer").get<std::string>());
      const auto* node = find_node(scene, a.at("node").get<std::string>());
      const auto zone = spatial::zone_from_string(a.at("zone").get<std::string>());
      if (!node) {
        r = check(false, "no node " + a["node"].get<std::string>());
      } else {
        std::string zones;
        for (const auto& z : node->zones) zones += (zones.empty() ? "" : " ") + spatial::to_string(z);
        r = check(std::find(node->zones.begin(), node->zones.end(), zone) != node->zones.end(), "zones " + zones);
      }
    } else if (r.type == "node_present") {
      const auto scene = augmentation::compose_user_scene(state, a.at("viewer").get<std::string>());
      const bool present = find_node(scene, a.at("node").get<std::string>()) != nullptr;
      r = check(present == a.value("present", true), present ? "present" : "absent");
    } else {
      r = check(false, "unknown assertion type");
    }
  } catch (const std::exception& e) {
    r = check(false, e.what());
  }
  r.type = a.value("type", std::string{});
  return r;
}

Consistency consistency_check(const json& server_state, const std::map<std::string, json>& client_states) {
  const auto reference = canonical_dump(server_state);
  for (const auto& [id, s] : client_states) {
    if (canonical_dump(s) != reference) return {false, id, first_difference(server_state, s)};
  }
  return {};
}

Consistency consistency_check(const SimNetwork& net) {
  std::map<std::string, json> clients;
  for (const auto& id : net.client_ids()) clients[id] = net.client(id).state();
  return consistency_check(session::to_json(net.server().state()), clients);
}

namespace {

json network_summary(const SimNetwork& net, std::map<std::string, std::string>& hashes) {
  std::size_t resyncs = 0;
  std::size_t duplicates = 0;
  std::size_t errors = 0;
  std::size_t resent = 0;
  for (const auto& id : net.client_ids()) {
    const auto& c = net.client(id);
    hashes[id] = canonical_hash(c.state());
    resyncs += c.resyncs();
    duplicates += c.duplicates_rejected();
    errors += c.errors().size();
    resent += c.resent();
  }
  const auto& s = net.stats();
  return json{{"frames_sent", s.frames_sent}, {"frames_dropped", s.frames_dropped}, {"bytes_sent", s.bytes_sent},
              {"resyncs", resyncs},         {"duplicates_rejected", duplicates}, {"client_errors", errors},
              {"events_resent", resent},                {"reconnects", s.reconnects},                {"server_duplicates", net.server().duplicates_dropped()},
              {"virtual_ms", net.now()}};
}

json rejections(const SimNetwork& net) {
  json out = json::array();
  for (const auto& id : net.client_ids())
    for (const auto& e : net.client(id).errors()) out.push_back({{"client", id}, {"error", e}});
  return out;
}

}  // namespace

RunResult run_scenario(const Scenario& sc, const RunOptions& options) {
  std::shared_ptr<const session::Workspace> ws;
  try {
    ws = session::load_workspace(sc.dataset, sc.layout);
  } catch (const Error& e) {
    throw Error(ErrorCode::kScenarioParseError, e.what());
  }
  const auto faults = options.faults.value_or(sc.faults);
  SimNetwork net(ws, sc.clients, faults, options.seed, sc.scene_updates);
  std::map<std::string, std::optional<std::string>> user_of_client;
  for (const auto& c : sc.clients) user_of_client[c.id] = c.user;

  std::vector<AssertionResult> results;
  const auto steps = std::min(sc.steps.size(), options.stop_after.value_or(sc.steps.size()));
  for (std::size_t i = 0; i < steps; ++i) {
    const auto& step = sc.steps[i];
    net.advance_to(step.t_ms);
    if (step.event) {
      json ev = *step.event;
      if (!ev.contains("user")) {
        const auto& user = user_of_client[step.client];
        if (!user) throw Error(ErrorCode::kScenarioParseError, "steps[" + std::to_string(i) + "]: event needs a user");
        ev["user"] = *user;
      }
      // Analysts act on what they see: another client's unacknowledged events
      // land before this one, so lossy runs keep the scripted cross-user order.
      for (const auto& id : net.client_ids())
        if (id != step.client && net.client(id).pending() > 0) net.settle();
      try {
        net.submit(step.client, session::event_from_json(ev));
      } catch (const Error& e) {
        throw Error(ErrorCode::kScenarioParseError, "steps[" + std::to_string(i) + "]: " + e.what());
      }
    } else {
      net.settle();
      auto r = evaluate(*step.assertion, net);
      r.step = i;
      results.push_back(std::move(r));
    }
  }
  const bool settled = net.settle();

  RunResult out;
  json assertions = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    assertions.push_back({{"step", r.step}, {"type", r.type}, {"passed", r.passed}, {"detail", r.detail}});
    if (r.passed) ++passed;
  }
  std::map<std::string, std::string> hashes;
  const auto stats = network_summary(net, hashes);
  const auto consistency = consistency_check(net);
  out.all_passed = passed == results.size();
  out.report = json{{"scenario", sc.name},
                    {"seed", options.seed},
                    {"faults", to_json(faults)},
                    {"steps_run", steps},
                    {"assertions", std::move(assertions)},
                    {"passed", passed},
                    {"failed", results.size() - passed},
                    {"server_seq", net.server().state().seq},
                    {"server_hash", canonical_hash(session::to_json(net.server().state()))},
                    {"client_hashes", hashes},
                    {"settled", settled},
                    {"consistent", consistency.consistent},
                    {"event_log", net.server().event_log()},
                    {"rejected", rejections(net)},
                    {"stats", stats}};
  out.final_state = net.server().state();
  return out;
}

RunResult run_random_session(std::shared_ptr<const session::Workspace> ws, const RandomRunOptions& options) {
  std::vector<ClientSpec> clients;
  for (std::size_t i = 0; i < options.clients; ++i) {
    const auto id = "u" + std::to_string(i + 1);
    clients.push_back({id, id});
  }
  SimNetwork net(ws, clients, options.faults, options.seed, options.scene_updates);
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ull);
  const json empty_state{{"users", json::object()}};
  for (std::size_t i = 0; i < options.events; ++i) {
    net.advance_to(static_cast<std::int64_t>(i + 1) * options.spacing_ms);
    const auto& c = clients[rng() % clients.size()];
    const auto& replica = net.client(c.id);
    const auto& view = replica.has_state() ? replica.state() : empty_state;
    net.submit(c.id, random_event(view, *ws, *c.user, rng));
  }
  const bool settled = net.settle();
  std::map<std::string, std::string> hashes;
  const auto stats = network_summary(net, hashes);
  const auto consistency = consistency_check(net);
  const auto server_hash = canonical_hash(session::to_json(net.server().state()));
  RunResult out;
  out.all_passed = settled && consistency.consistent;
  out.report = json{{"seed", options.seed},
                    {"clients", options.clients},
                    {"events_sent", options.events},
                    {"faults", to_json(options.faults)},
                    {"server_seq", net.server().state().seq},
                    {"server_hash", server_hash},
                    {"client_hashes", hashes},
                    {"settled", settled},
                    {"consistent", consistency.consistent},
                    {"first_difference", consistency.path},
                    {"event_log", net.server().event_log()},
                    {"stats", stats}};
  out.final_state = net.server().state();
  return out;
}

}  // namespace augview::sim
