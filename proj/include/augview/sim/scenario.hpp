#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "augview/common/canonical_json.hpp"

namespace augview::sim {

struct FaultSpec {
  double loss = 0.0;             // probability of dropping a frame, per direction
  std::int64_t latency_ms = 20;  // one-way base latency
  std::int64_t jitter_ms = 0;    // uniform extra latency in [0, jitter_ms]

  friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

// "loss=0.1,latency=30,jitter=10"; missing keys keep their defaults. Throws Error(kBadParams).
FaultSpec parse_faults(const std::string& text);
json to_json(const FaultSpec& f);

struct ClientSpec {
  std::string id;
  std::optional<std::string> user;
};

struct Step {
  std::int64_t t_ms = 0;
  std::string client;
  std::optional<json> event;      // InputEvent JSON; "user" defaults to the client's user
  std::optional<json> assertion;  // {"type": ..., ...}
};

struct Scenario {
  std::string name;
  std::filesystem::path dataset;
  std::filesystem::path layout;
  std::vector<ClientSpec> clients;
  FaultSpec faults;
  bool scene_updates = true;
  std::vector<Step> steps;
};

// Relative dataset and layout paths resolve against `base_dir`.
// Throws Error(kScenarioParseError).
Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace augview::sim
