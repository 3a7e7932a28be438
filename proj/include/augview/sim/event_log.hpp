#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "augview/common/canonical_json.hpp"
#include "augview/session/state.hpp"

namespace augview::sim {

// Recorded sessions are newline-delimited JSON: a header line naming the inputs,
// then one applied event per line.
json event_log_header(const std::filesystem::path& dataset, const std::filesystem::path& layout);

// True when the file starts with an event log header.
bool is_event_log(const std::filesystem::path& path);

struct ReplayedLog {
  session::SessionState state;
  std::vector<std::string> lines;  // "seq=N kind=K user=U" per applied event
  std::size_t rejected = 0;        // events the state machine refused
};

// Re-applies every event of a recorded log to a fresh state.
// Throws Error(kScenarioParseError) on unreadable input.
ReplayedLog replay_event_log(const std::filesystem::path& path);

std::string event_log_line(std::uint64_t seq, const json& event);

}  // namespace augview::sim
