#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "augview/common/error.hpp"
#include "augview/spatial/display.hpp"
#include "augview/spatial/fold.hpp"
#include "augview/spatial/pose.hpp"
#include "augview/spatial/zone.hpp"
#include "support.hpp"

using namespace augview;
using namespace augview::spatial;

namespace {

void check_vec(Vec3 got, Vec3 want, double tol = 1e-12) {
  CHECK(got.x == doctest::Approx(want.x).epsilon(tol));
  CHECK(got.y == doctest::Approx(want.y).epsilon(tol));
  CHECK(got.z == doctest::Approx(want.z).epsilon(tol));
}

// Reference cell of one axis: 0 below the range, 1 inside (closed), 2 above.
int cell(double v, double lo, double hi) { return v < lo ? 0 : (v <= hi ? 1 : 2); }

}  // namespace

TEST_CASE("display_to_world examples") {
  const auto hub = surface_hub_84();
  check_vec(display_to_world({0, 0}, hub), {0, 0, 0});
  check_vec(display_to_world({3840, 2160}, hub), {1.872, 1.053, 0});
  check_vec(display_to_world({1920, 1080}, hub), {0.936, 0.5265, 0});
  const auto wall = display_wall();
  check_vec(display_to_world({7680, 3240}, wall), {4.86, 2.06, 0});
  const auto r = display_rect_to_world({1920, 1080, 1920, 1080}, hub);
  CHECK(r.x == doctest::Approx(0.936));
  CHECK(r.h == doctest::Approx(0.5265));
  CHECK(display_preset("surface-hub-84").has_value());
  CHECK_FALSE(display_preset("crt").has_value());
}

TEST_CASE("display config validation and json") {
  DisplayConfig bad = surface_hub_84();
  bad.width_m = 0;
  CHECK_THROWS_AS(validate(bad), Error);
  bad = surface_hub_84();
  bad.height_px = -1;
  CHECK_THROWS_AS(validate(bad), Error);
  const auto hub = surface_hub_84();
  const auto back = display_from_json(to_json(hub));
  CHECK(back.width_px == hub.width_px);
  CHECK(back.height_m == hub.height_m);
  CHECK(display_from_json(json{{"preset", "display-wall"}}).width_px == 7680);
  CHECK_THROWS_AS(display_from_json(json{{"preset", "nope"}}), Error);
}

TEST_CASE("property: world_to_display inverts display_to_world") {
  testing::Gen g(41);
  for (const auto& cfg : {surface_hub_84(), display_wall()}) {
    for (int i = 0; i < 10000; ++i) {
      const Vec2 px{g.uniform(-2000, 10000), g.uniform(-2000, 6000)};
      const Vec3 w = display_to_world(px, cfg);
      const Vec2 back = world_to_display(w, cfg);
      const Vec3 again = display_to_world(back, cfg);
      CHECK(distance(w, again) <= 1e-9);
    }
  }
}

TEST_CASE("classify_zone examples") {
  const auto hub = surface_hub_84();
  const double W = hub.width_m;
  const double H = hub.height_m;
  CHECK(to_string(classify_zone({W / 2, H / 2, 0}, hub)) == "center/middle/coincident");
  CHECK(to_string(classify_zone({-0.1, 0.5, 0}, hub)) == "left/middle/coincident");
  CHECK(to_string(classify_zone({W + 0.2, H + 0.2, 0.3}, hub)) == "right/top/front");
  CHECK(to_string(classify_zone({0, 0, -0.02}, hub)) == "center/middle/behind");
  CHECK(to_string(classify_zone({W, H, kCoincidenceTolerance}, hub)) == "center/middle/coincident");
  CHECK(to_string(classify_zone({W, -1e-12, 0}, hub)) == "center/bottom/coincident");
  CHECK_THROWS_AS(zone_from_string("up/down"), Error);
}

TEST_CASE("property: every point lands in exactly its reference cell") {
  testing::Gen g(42);
  const auto hub = surface_hub_84();
  std::set<int> seen;
  for (int i = 0; i < 10000; ++i) {
    // Snap a third of the draws onto the boundaries.
    auto draw = [&](double hi) {
      if (g.coin(0.33)) return g.pick(std::vector<double>{0.0, hi});
      return g.uniform(-1.0, hi + 1.0);
    };
    const Vec3 p{draw(hub.width_m), draw(hub.height_m),
                 g.coin(0.2) ? g.pick(std::vector<double>{-0.01, 0.01}) : g.uniform(-1, 1)};
    const Zone z = classify_zone(p, hub);
    CHECK(static_cast<int>(z.horizontal) == cell(p.x, 0, hub.width_m));
    CHECK(static_cast<int>(z.vertical) == cell(p.y, 0, hub.height_m));
    CHECK(static_cast<int>(z.depth) == cell(p.z, -kCoincidenceTolerance, kCoincidenceTolerance));
    CHECK(zone_from_string(to_string(z)) == z);
    seen.insert(z.index());
  }
  CHECK(seen.size() == 27);
}

TEST_CASE("zones_of_box agrees with sampling the box") {
  testing::Gen g(43);
  const auto hub = surface_hub_84();
  for (int i = 0; i < 200; ++i) {
    const Vec3 a{g.uniform(-1, 3), g.uniform(-1, 2), g.uniform(-0.5, 0.5)};
    const Vec3 b{a.x + g.uniform(0, 1), a.y + g.uniform(0, 1), a.z + g.uniform(0, 0.3)};
    const auto zones = zones_of_box(Aabb::of({a, b}), hub);
    std::set<Zone> listed(zones.begin(), zones.end());
    for (int k = 0; k < 200; ++k) {
      const Vec3 p{g.uniform(a.x, b.x), g.uniform(a.y, b.y), g.uniform(a.z, b.z)};
      CHECK(listed.count(classify_zone(p, hub)) == 1);
    }
    for (std::size_t k = 1; k < zones.size(); ++k) CHECK(zones[k - 1].index() < zones[k].index());
  }
}

TEST_CASE("fold_plane examples") {
  const Rect vis{0, 1, 1, 1};
  const auto folded = fold_plane(vis, planar({0, 0, 1, 1}));
  CHECK(folded.area() == doctest::Approx(1.0));
  for (const auto& c : folded.corners()) CHECK(c.z >= 0.0);
  check_vec(folded.origin, {0, 1, 0});
  check_vec(folded.origin + folded.edge_u, {1, 1, 0});
  check_vec(folded.edge_v, {0, 0, 1});
  CHECK_THROWS_AS(fold_plane(vis, folded), Error);
  CHECK_THROWS_AS(fold_plane(vis, planar({3, 3, 1, 1})), Error);
  // Corner contact only.
  CHECK_THROWS_AS(fold_plane(vis, planar({1, 0, 1, 1})), Error);
}

TEST_CASE("property: fold_plane is an isometry that fixes the hinge") {
  testing::Gen g(44);
  for (int i = 0; i < 500; ++i) {
    const Rect vis{g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(0.1, 2), g.uniform(0.1, 2)};
    const double d = g.uniform(0.01, 1.0);
    const double a = g.uniform(0.0, 0.8);
    const double span = g.uniform(0.05, 1.0);
    Rect zone;
    std::array<Vec3, 2> hinge;
    switch (g.integer(0, 3)) {
      case 0:
        zone = {vis.x + a * vis.w, vis.y - d, span * vis.w, d};
        hinge = {Vec3{zone.x, vis.y, 0}, Vec3{zone.right(), vis.y, 0}};
        break;
      case 1:
        zone = {vis.x + a * vis.w, vis.top(), span * vis.w, d};
        hinge = {Vec3{zone.x, vis.top(), 0}, Vec3{zone.right(), vis.top(), 0}};
        break;
      case 2:
        zone = {vis.x - d, vis.y + a * vis.h, d, span * vis.h};
        hinge = {Vec3{vis.x, zone.y, 0}, Vec3{vis.x, zone.top(), 0}};
        break;
      default:
        zone = {vis.right(), vis.y + a * vis.h, d, span * vis.h};
        hinge = {Vec3{vis.right(), zone.y, 0}, Vec3{vis.right(), zone.top(), 0}};
    }
    const auto flat = planar(zone);
    const auto out = fold_plane(vis, flat);
    const auto before = flat.corners();
    const auto after = out.corners();
    // The multiset of pairwise corner distances is preserved.
    auto pairwise = [](const std::array<Vec3, 4>& c) {
      std::vector<double> d;
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = p + 1; q < 4; ++q) d.push_back(distance(c[p], c[q]));
      std::sort(d.begin(), d.end());
      return d;
    };
    const auto da = pairwise(before);
    const auto db = pairwise(after);
    for (std::size_t k = 0; k < da.size(); ++k) CHECK(std::abs(da[k] - db[k]) <= 1e-9);
    // Each hinge endpoint stays a corner; every other corner is lifted by d.
    for (const auto& h : hinge) {
      bool found = false;
      for (const auto& c : after) found = found || distance(c, h) <= 1e-12;
      CHECK(found);
    }
    int lifted = 0;
    for (const auto& c : after) lifted += std::abs(c.z - d) <= 1e-12;
    CHECK(lifted == 2);
    CHECK(out.area() == doctest::Approx(flat.area()).epsilon(1e-12));
  }
}

TEST_CASE("proxemic_side examples") {
  const auto hub = surface_hub_84();
  const double W = hub.width_m;
  auto at = [&](double x) {
    Pose p;
    p.position = {x, 1.0, 1.5};
    return proxemic_side(p, hub);
  };
  CHECK(at(W / 4).preferred == Side::kLeft);
  CHECK(at(W / 2).preferred == Side::kRight);
  CHECK(at(0.9 * W).preferred == Side::kRight);
  CHECK(at(-1.0).preferred == Side::kLeft);
  const auto r = at(W / 4);
  CHECK(r.to_left == doctest::Approx(W / 4));
  CHECK(r.to_right == doctest::Approx(3 * W / 4));
  CHECK(r.to_bottom == doctest::Approx(1.0));
  CHECK(r.to_top == doctest::Approx(hub.height_m - 1.0));
  CHECK(r.to_plane == doctest::Approx(1.5));
}

TEST_CASE("facing normalization and pose json") {
  const Vec3 f = normalized_facing({3, 0, -4});
  CHECK(f.norm() == doctest::Approx(1.0));
  CHECK(normalized_facing({0, 0, 0}) == Vec3{0, 0, -1});
  CHECK(normalized_facing({NAN, 0, 0}) == Vec3{0, 0, -1});
  Pose p;
  p.position = {0.25, 1.5, 0.75};
  CHECK(pose_from_json(to_json(p)) == p);
}
