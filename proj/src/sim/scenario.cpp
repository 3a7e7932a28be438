#include "augview/sim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "augview/common/error.hpp"

namespace augview::sim {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kScenarioParseError, what); }

}  // namespace

FaultSpec parse_faults(const std::string& text) {
  FaultSpec f;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kBadParams, "faults: expected key=value, got '" + item + "'");
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      if (key == "loss") f.loss = std::stod(value, &used);
      else if (key == "latency") f.latency_ms = std::stoll(value, &used);
      else if (key == "jitter") f.jitter_ms = std::stoll(value, &used);
      else throw Error(ErrorCode::kBadParams, "faults: unknown key '" + key + "'");
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kBadParams, "faults: bad value for '" + key + "'");
    }
  }
  if (!(f.loss >= 0.0 && f.loss < 1.0) || f.latency_ms < 0 || f.jitter_ms < 0)
    throw Error(ErrorCode::kBadParams, "faults: need 0 <= loss < 1 and non-negative latency");
  return f;
}

json to_json(const FaultSpec& f) {
  return json{{"loss", f.loss}, {"latency_ms", f.latency_ms}, {"jitter_ms", f.jitter_ms}};
}

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) bad("scenario must be a JSON object");
  Scenario s;
  try {
    s.name = j.value("name", std::string("scenario"));
    const auto resolve = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_string()) bad(std::string(key) + ": missing path");
      std::filesystem::path p = j[key].get<std::string>();
      return p.is_absolute() ? p : base_dir / p;
    };
    s.dataset = resolve("dataset");
    s.layout = resolve("layout");
    if (j.contains("faults")) {
      const auto& f = j["faults"];
      s.faults.loss = f.value("loss", s.faults.loss);
      s.faults.latency_ms = f.value("latency_ms", s.faults.latency_ms);
      s.faults.jitter_ms = f.value("jitter_ms", s.faults.jitter_ms);
    }
    s.scene_updates = j.value("scene_updates", true);
    std::set<std::string> known;
    for (const auto& c : j.value("clients", json::array())) {
      ClientSpec spec;
      spec.id = c.at("id").get<std::string>();
      if (c.contains("user")) spec.user = c["user"].get<std::string>();
      if (!known.insert(spec.id).second) bad("clients: duplicate id '" + spec.id + "'");
      s.clients.push_back(std::move(spec));
    }
    const auto& steps = j.value("steps", json::array());
    std::int64_t last = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& st = steps[i];
      const std::string where = "steps[" + std::to_string(i) + "]";
      Step step;
      step.t_ms = st.value("t", last);
      if (step.t_ms < last) bad(where + ".t: times must be nondecreasing");
      last = step.t_ms;
      step.client = st.value("client", std::string{});
      if (st.contains("event") == st.contains("assert")) bad(where + ": needs exactly one of event or assert");
      if (st.contains("event")) {
        if (step.client.empty()) bad(where + ".client: events need a client");
        step.event = st["event"];
        if (!step.event->is_object()) bad(where + ".event: must be an object");
      } else {
        step.assertion = st["assert"];
        if (!step.assertion->is_object() || !step.assertion->contains("type")) bad(where + ".assert: needs a type");
      }
      if (!step.client.empty() && known.insert(step.client).second) s.clients.push_back({step.client, step.client});
      s.steps.push_back(std::move(step));
    }
  } catch (const json::exception& e) {
    bad(e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
  return scenario_from_json(j, path.parent_path());
}

}  // namespace augview::sim
