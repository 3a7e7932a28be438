#include <doctest.h>

#include "augview/common/canonical_json.hpp"
#include "augview/common/error.hpp"
#include "augview/common/geometry.hpp"
#include "support.hpp"

using namespace augview;

TEST_CASE("canonical dump sorts keys and prints nine significant digits") {
  const json j = json::parse(R"({"b": 1, "a": [0.1, -0.0, 1e21, 2.5], "c": {"z": null, "y": true}})");
  CHECK(canonical_dump(j) == R"({"a":[0.1,0,1e+21,2.5],"b":1,"c":{"y":true,"z":null}})");
  CHECK(canonical_dump(json(1.0 / 3.0)) == "0.333333333");
  CHECK(canonical_dump(json(std::numeric_limits<double>::quiet_NaN())) == "null");
  CHECK(canonical_dump(json("a\"b")) == R"("a\"b")");
}

TEST_CASE("values equal to nine digits hash alike") {
  CHECK(canonical_hash(json(0.1234567891)) == canonical_hash(json(0.1234567894)));
  CHECK(canonical_hash(json(0.123456789)) != canonical_hash(json(0.123456788)));
  CHECK(canonical_hash(json::object()).size() == 16);
}

TEST_CASE("fnv1a64 reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("first_difference names the first divergent path") {
  const json a = json::parse(R"({"users": {"sue": {"pose": [1, 2, 3]}}, "seq": 4})");
  json b = a;
  CHECK(first_difference(a, b).empty());
  b["users"]["sue"]["pose"][2] = 3.5;
  CHECK(first_difference(a, b) == "/users/sue/pose/2");
  b = a;
  b["users"]["a/b"] = 1;
  CHECK(first_difference(a, b) == "/users/a~1b");
  b = a;
  b["seq"] = 5;
  CHECK(first_difference(a, b) == "/seq");
  CHECK(first_difference(json(1), json(2)) == "/");
  CHECK(first_difference(json::array({1}), json::array({1, 2})) == "/1");
}

TEST_CASE("property: canonical dump is invariant under key insertion order") {
  testing::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::pair<std::string, double>> fields;
    const auto n = g.integer(0, 8);
    for (int k = 0; k < n; ++k) fields.emplace_back("k" + std::to_string(g.integer(0, 20)), g.uniform(-1e6, 1e6));
    json fwd = json::object();
    json rev = json::object();
    for (const auto& [k, v] : fields) fwd[k] = v;
    for (auto it = fields.rbegin(); it != fields.rend(); ++it)
      if (!rev.contains(it->first)) rev[it->first] = fwd[it->first];
    CHECK(canonical_dump(fwd) == canonical_dump(rev));
    CHECK(first_difference(fwd, rev).empty());
  }
}

TEST_CASE("error codes carry their name in the message") {
  const Error e(ErrorCode::kStaleEvent, "late");
  CHECK(e.code() == ErrorCode::kStaleEvent);
  CHECK(std::string(e.what()) == "StaleEvent: late");
  CHECK(to_string(ErrorCode::kFrameTooLarge) == "FrameTooLarge");
  CHECK(to_string(ErrorCode::kScenarioParseError) == "ScenarioParseError");
}

TEST_CASE("rectangles that only touch do not overlap") {
  const Rect a{0, 0, 10, 10};
  CHECK_FALSE(a.overlaps(Rect{10, 0, 5, 5}));
  CHECK_FALSE(a.overlaps(Rect{0, 10, 5, 5}));
  CHECK(a.overlaps(Rect{9.5, 9.5, 5, 5}));
  CHECK(a.contains({10, 10}));
  CHECK_FALSE(a.contains({10.01, 5}));
}

TEST_CASE("aabb grows to cover its points") {
  Aabb box;
  CHECK(box.empty());
  box.expand(Vec3{1, -2, 3});
  box.expand(Vec3{-1, 2, 0});
  CHECK(box.lo == Vec3{-1, -2, 0});
  CHECK(box.hi == Vec3{1, 2, 3});
  CHECK(Vec3{1, 0, 0}.cross(Vec3{0, 1, 0}) == Vec3{0, 0, 1});
}
