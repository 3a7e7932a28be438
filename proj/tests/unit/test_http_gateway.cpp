#include <doctest.h>
#include <httplib.h>

#include <chrono>
#include <thread>

#include "augview/protocol/client_replica.hpp"
#include "augview/protocol/http_gateway.hpp"
#include "augview/session/events.hpp"
#include "support.hpp"

using namespace augview;
using namespace augview::protocol;

namespace {

struct Served {
  ServerCore core{testing::movies()};
  Hub hub{core};
  HttpGateway gateway{hub};
  std::uint16_t port = gateway.start("127.0.0.1", 0);
  ~Served() { gateway.stop(); }
};

}  // namespace

TEST_CASE("gateway carries the framed stream over http") {
  Served s;
  REQUIRE(s.port != 0);
  httplib::Client http("127.0.0.1", s.port);

  const auto opened = http.Post("/gateway/open");
  REQUIRE(opened);
  const auto conn = std::to_string(json::parse(opened->body)["conn"].get<int>());

  ClientReplica client("web");
  auto out = encode(client.hello(0));
  for (const auto& e : client.submit(session::event_from_json({{"kind", "join"}, {"user", "web"}})))
    out += encode(e);
  for (const auto& e : client.submit(session::event_from_json(
           {{"kind", "select"}, {"user", "web"}, {"vis", "budget_gross"}, {"rows", {3, 4}}})))
    out += encode(e);
  const auto sent = http.Post(("/gateway/send?conn=" + conn).c_str(), out, "application/octet-stream");
  REQUIRE(sent);
  CHECK(sent->status == 204);

  FrameDecoder d;
  for (int i = 0; i < 200 && (client.seq() < 2 || client.pending() > 0); ++i) {
    const auto got = http.Get(("/gateway/recv?conn=" + conn).c_str());
    REQUIRE(got);
    d.feed(got->body);
    std::string replies;
    while (auto env = d.next())
      for (const auto& r : client.receive(*env, 0)) replies += encode(r);
    if (!replies.empty()) http.Post(("/gateway/send?conn=" + conn).c_str(), replies, "application/octet-stream");
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  CHECK(client.seq() == 2);
  CHECK(client.pending() == 0);
  CHECK(s.hub.with_core([](ServerCore& c) { return c.state().user("web").selections.at("budget_gross").size(); }) == 2);

  const auto state = http.Get("/debug/state");
  REQUIRE(state);
  CHECK(json::parse(state->body) == session::to_json(s.hub.with_core([](ServerCore& c) { return c.state(); })));

  const auto scene = http.Get("/debug/scene?viewer=web");
  REQUIRE(scene);
  CHECK(scene->status == 200);
  CHECK(json::parse(scene->body)["viewer"] == "web");
  const auto missing = http.Get("/debug/scene?viewer=nobody");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["code"] == "UnknownUser");

  const auto closed = http.Post(("/gateway/close?conn=" + conn).c_str());
  REQUIRE(closed);
  CHECK(closed->status == 204);
  CHECK(http.Get("/gateway/recv?conn=999")->status >= 400);
}

TEST_CASE("debug marks list every chart's mark set") {
  Served s;
  httplib::Client http("127.0.0.1", s.port);
  const auto res = http.Get("/debug/marks");
  REQUIRE(res);
  const auto marks = json::parse(res->body);
  const auto& ws = s.core.workspace();
  CHECK(marks.size() == ws.layout().visualizations.size());
  for (const auto& spec : ws.layout().visualizations) {
    INFO(spec.id);
    CHECK(marks.at(spec.id) == vis::to_json(ws.marks(spec.id)));
  }
}
