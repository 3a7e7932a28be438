#include "augview/sim/event_log.hpp"

#include <fstream>

#include "augview/common/error.hpp"
#include "augview/session/session.hpp"

namespace augview::sim {

json event_log_header(const std::filesystem::path& dataset, const std::filesystem::path& layout) {
  return json{{"augview_log", 1},
              {"dataset", std::filesystem::absolute(dataset).lexically_normal().string()},
              {"layout", std::filesystem::absolute(layout).lexically_normal().string()}};
}

bool is_event_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string first;
  if (!in || !std::getline(in, first)) return false;
  const auto j = json::parse(first, nullptr, false);
  return j.is_object() && j.contains("augview_log");
}

std::string event_log_line(std::uint64_t seq, const json& event) {
  return "seq=" + std::to_string(seq) + " kind=" + event.value("kind", std::string("?")) +
         " user=" + event.value("user", std::string("?"));
}

ReplayedLog replay_event_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kScenarioParseError, "cannot open '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  const auto header = json::parse(line, nullptr, false);
  if (!header.is_object() || !header.contains("augview_log"))
    throw Error(ErrorCode::kScenarioParseError, path.string() + ": missing event log header");
  std::shared_ptr<const session::Workspace> ws;
  try {
    ws = session::load_workspace(header.at("dataset").get<std::string>(), header.at("layout").get<std::string>());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kScenarioParseError, e.what());
  }
  ReplayedLog out{session::initial_state(ws), {}, 0};
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto j = json::parse(line, nullptr, false);
    // A log cut off mid-write ends in a partial line; everything before it stands.
    if (j.is_discarded()) break;
    try {
      out.state = session::apply_event(out.state, session::event_from_json(j)).state;
      out.lines.push_back(event_log_line(out.state.seq, j));
    } catch (const Error&) {
      ++out.rejected;
    }
  }
  return out;
}

}  // namespace augview::sim
