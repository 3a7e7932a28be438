#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "augview/augmentation/scene.hpp"
#include "augview/session/session.hpp"
#include "augview/sim/network.hpp"
#include "augview/sim/scenario.hpp"

namespace augview::sim {

struct AssertionResult {
  std::size_t step = 0;
  std::string type;
  bool passed = false;
  std::string detail;
};

// Evaluates one assertion object against the settled network. Unknown types fail.
AssertionResult evaluate(const json& assertion, SimNetwork& net);

struct Consistency {
  bool consistent = true;
  std::string client;  // first divergent client
  std::string path;    // JSON pointer of the first difference
};

Consistency consistency_check(const json& server_state, const std::map<std::string, json>& client_states);
Consistency consistency_check(const SimNetwork& net);

struct RunOptions {
  std::uint64_t seed = 1;
  std::optional<FaultSpec> faults;  // overrides the scenario's
  std::optional<std::size_t> stop_after;  // number of steps to execute
};

struct RunResult {
  json report;
  bool all_passed = true;
  session::SessionState final_state;
};

// Throws Error(kScenarioParseError) when the dataset or layout does not load.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

struct RandomRunOptions {
  std::uint64_t seed = 1;
  std::size_t clients = 3;
  std::size_t events = 500;
  FaultSpec faults;
  std::int64_t spacing_ms = 40;
  bool scene_updates = true;
};

// Analysts "u1".."uN" each on their own client, firing random events drawn from
// their replica's view of the state. Report carries hashes and statistics.
RunResult run_random_session(std::shared_ptr<const session::Workspace> ws, const RandomRunOptions& options);

}  // namespace augview::sim
