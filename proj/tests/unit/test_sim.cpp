#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "augview/common/error.hpp"
#include "augview/session/events.hpp"
#include "augview/sim/event_log.hpp"
#include "augview/sim/network.hpp"
#include "augview/sim/runner.hpp"
#include "augview/sim/scenario.hpp"
#include "support.hpp"

using namespace augview;
using namespace augview::sim;

namespace {

json base_scenario() {
  return {{"name", "t"},
          {"dataset", testing::source_path("fixtures/movies_200.csv").string()},
          {"layout", testing::source_path("layouts/surface-hub-84.json").string()},
          {"clients", json::array()},
          {"steps", json::array()}};
}

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "augview-tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("fault specs") {
  CHECK(parse_faults("") == FaultSpec{});
  const auto f = parse_faults("loss=0.1,latency=30,jitter=10");
  CHECK(f.loss == 0.1);
  CHECK(f.latency_ms == 30);
  CHECK(f.jitter_ms == 10);
  CHECK(parse_faults("jitter=5").latency_ms == FaultSpec{}.latency_ms);
  CHECK_THROWS_AS(parse_faults("loss=2"), Error);
  CHECK_THROWS_AS(parse_faults("delay=3"), Error);
  CHECK_THROWS_AS(parse_faults("loss"), Error);
  CHECK_THROWS_AS(parse_faults("latency=-1"), Error);
}

TEST_CASE("scenario parsing errors name the problem") {
  auto bad = [](json j) {
    try {
      scenario_from_json(j);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kScenarioParseError);
      return std::string(e.what());
    }
    FAIL("accepted: " << j.dump());
    return std::string();
  };
  auto j = base_scenario();
  j.erase("dataset");
  CHECK(bad(j).find("dataset") != std::string::npos);
  j = base_scenario();
  j["clients"] = {{{"id", "a"}}, {{"id", "a"}}};
  CHECK(bad(j).find("duplicate") != std::string::npos);
  j = base_scenario();
  j["steps"] = {{{"t", 0}, {"event", {{"kind", "join"}}}}};
  CHECK(bad(j).find("steps[0].client") != std::string::npos);
  j = base_scenario();
  j["steps"] = {{{"t", 0}, {"client", "a"}, {"event", {{"kind", "join"}}}, {"assert", {{"type", "consistent"}}}}};
  CHECK(bad(j).find("exactly one") != std::string::npos);
  j = base_scenario();
  j["steps"] = {{{"t", 0}, {"client", "a"}, {"assert", json::object()}}};
  CHECK(bad(j).find("type") != std::string::npos);
  j = base_scenario();
  j["clients"] = {{{"id", "a"}, {"user", "a"}}};
  j["steps"] = {{{"t", 5}, {"client", "a"}, {"assert", {{"type", "consistent"}}}},
                {{"t", 1}, {"client", "a"}, {"assert", {{"type", "consistent"}}}}};
  CHECK_FALSE(bad(j).empty());
  CHECK_THROWS_AS(load_scenario("/nonexistent.json"), Error);
}

TEST_CASE("clients named only by steps are declared implicitly") {
  auto j = base_scenario();
  j.erase("steps");
  CHECK(scenario_from_json(j).steps.empty());
  j["steps"] = {{{"t", 0}, {"client", "ghost"}, {"event", {{"kind", "join"}}}}};
  const auto s = scenario_from_json(j);
  REQUIRE(s.clients.size() == 1);
  CHECK(s.clients[0].id == "ghost");
  CHECK(s.clients[0].user == "ghost");
}

TEST_CASE("an empty scenario passes with an untouched state") {
  const auto r = run_scenario(scenario_from_json(base_scenario()));
  CHECK(r.all_passed);
  CHECK(r.report["server_seq"] == 0);
  CHECK(r.report["consistent"] == true);
  CHECK(r.report["assertions"].empty());
}

TEST_CASE("unknown assertion types fail") {
  auto j = base_scenario();
  j["clients"] = {{{"id", "a"}, {"user", "a"}}};
  j["steps"] = {{{"t", 0}, {"client", "a"}, {"event", {{"kind", "join"}}}},
                {{"t", 100}, {"client", "a"}, {"assert", {{"type", "telepathy"}}}},
                {{"t", 100}, {"client", "a"}, {"assert", {{"type", "node_count"}, {"viewer", "a"}, {"kind", "lens"}, {"equals", 0}}}}};
  const auto r = run_scenario(scenario_from_json(j));
  CHECK_FALSE(r.all_passed);
  CHECK(r.report["passed"] == 1);
  CHECK(r.report["assertions"][0]["passed"] == false);
}

TEST_CASE("random sessions are deterministic per seed and converge under loss") {
  const auto ws = testing::movies();
  RandomRunOptions o;
  o.events = 150;
  o.seed = 3;
  o.faults = parse_faults("loss=0.1,latency=25,jitter=15");
  const auto a = run_random_session(ws, o);
  const auto b = run_random_session(ws, o);
  CHECK(canonical_dump(a.report) == canonical_dump(b.report));
  CHECK(a.all_passed);
  CHECK(a.report["settled"] == true);
  CHECK(a.report["stats"]["frames_dropped"].get<std::size_t>() > 0);
  for (const auto& [id, h] : a.report["client_hashes"].items()) CHECK(h == a.report["server_hash"]);
  o.seed = 4;
  CHECK(run_random_session(ws, o).report["server_hash"] != a.report["server_hash"]);
}

TEST_CASE("an injected delta drop is repaired") {
  SimNetwork net(testing::movies(), {{"a", "a"}, {"b", "b"}}, FaultSpec{}, 1);
  net.submit("a", session::event_from_json({{"kind", "join"}, {"user", "a"}}));
  net.submit("b", session::event_from_json({{"kind", "join"}, {"user", "b"}}));
  REQUIRE(net.settle());
  net.drop_next("b", protocol::MessageKind::kDelta);
  net.submit("a", session::event_from_json({{"kind", "select"}, {"user", "a"}, {"vis", "genre_pie"}, {"rows", {3}}}));
  REQUIRE(net.settle());
  CHECK(net.client("b").resyncs() >= 1);
  CHECK(consistency_check(net).consistent);
  CHECK(net.stats().frames_dropped == 1);
}

TEST_CASE("consistency_check reports the first divergent client and path") {
  const json server{{"seq", 2}, {"users", {{"a", {{"event_no", 1}}}}}};
  json other = server;
  other["users"]["a"]["event_no"] = 0;
  const auto ok = consistency_check(server, {{"x", server}, {"y", server}});
  CHECK(ok.consistent);
  const auto bad = consistency_check(server, {{"x", server}, {"y", other}});
  CHECK_FALSE(bad.consistent);
  CHECK(bad.client == "y");
  CHECK(bad.path == "/users/a/event_no");
}

TEST_CASE("a recorded log replays to the recorded state") {
  const auto ws = testing::movies();
  RandomRunOptions o;
  o.events = 120;
  o.seed = 11;
  const auto run = run_random_session(ws, o);
  const auto path = temp_file("log.ndjson");
  {
    std::ofstream f(path);
    f << event_log_header(testing::source_path("fixtures/movies_200.csv"),
                          testing::source_path("layouts/surface-hub-84.json"))
             .dump()
      << '\n';
    for (const auto& e : run.report["event_log"]) f << e.dump() << '\n';
  }
  CHECK(is_event_log(path));
  CHECK_FALSE(is_event_log(testing::source_path("scenarios/movies_walkthrough.json")));
  const auto replayed = replay_event_log(path);
  CHECK(replayed.rejected == 0);
  CHECK(replayed.lines.size() == run.report["event_log"].size());
  CHECK(canonical_hash(session::to_json(replayed.state)) == run.report["server_hash"]);
  CHECK(replayed.lines.front().rfind("seq=1 kind=join", 0) == 0);
}

TEST_CASE("walkthrough prefix runs stop where asked") {
  const auto sc = load_scenario(testing::source_path("scenarios/movies_walkthrough.json"));
  RunOptions o;
  o.stop_after = 2;
  const auto r = run_scenario(sc, o);
  CHECK(r.report["steps_run"] == 2);
  CHECK(r.final_state.users.size() == 2);
  CHECK(r.report["assertions"].empty());
}
