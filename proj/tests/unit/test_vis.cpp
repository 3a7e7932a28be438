#include <doctest.h>

#include <cmath>
#include <sstream>

#include "augview/common/canonical_json.hpp"
#include "augview/common/error.hpp"
#include "augview/data/table.hpp"
#include "augview/vis/marks.hpp"
#include "support.hpp"

using namespace augview;
using namespace augview::vis;

namespace {

data::DataTable csv(const std::string& text) {
  std::istringstream in(text);
  return data::load_table(in, "t");
}

VisSpec chart(ChartKind kind, Rect rect = {0, 0, 100, 100}) {
  VisSpec s;
  s.id = "v";
  s.kind = kind;
  s.view_rect = rect;
  return s;
}

bool intersects(const std::vector<RowId>& rows, const RowSet& s) {
  for (RowId r : rows)
    if (s.count(r)) return true;
  return false;
}

}  // namespace

TEST_CASE("bar heights follow counts") {
  const auto t = csv("c\na\nb\na\n");
  auto s = chart(ChartKind::kBar);
  s.group_by = "c";
  const auto m = build_marks(s, t);
  REQUIRE(m.marks.size() == 2);
  CHECK(m.marks[0].category == "a");
  CHECK(m.marks[0].geometry.rect.h == doctest::Approx(1.0));
  CHECK(m.marks[0].geometry.rect.h / m.marks[1].geometry.rect.h == doctest::Approx(2.0));
  CHECK(m.marks[0].row_ids == std::vector<RowId>{0, 2});
  CHECK(m.marks[1].channels.value == 1.0);
}

TEST_CASE("pie sectors split evenly and span the circle") {
  const auto t = csv("c\na\nb\n");
  auto s = chart(ChartKind::kPie);
  s.group_by = "c";
  const auto m = build_marks(s, t);
  REQUIRE(m.marks.size() == 2);
  CHECK(m.marks[0].geometry.span_deg == doctest::Approx(180.0));
  CHECK(m.marks[1].geometry.start_deg == doctest::Approx(180.0));
}

TEST_CASE("property: pie spans sum to 360 degrees") {
  testing::Gen g(31);
  for (int i = 0; i < 200; ++i) {
    std::ostringstream out;
    out << "c\n";
    const auto n = g.integer(1, 300);
    for (int r = 0; r < n; ++r) out << "k" << g.integer(0, g.integer(0, 40)) << '\n';
    auto s = chart(ChartKind::kPie);
    s.group_by = "c";
    const auto m = build_marks(s, csv(out.str()));
    double sum = 0.0;
    for (const auto& mk : m.marks) sum += mk.geometry.span_deg;
    CHECK(std::abs(sum - 360.0) <= 1e-9);
  }
}

TEST_CASE("fixture scatter x equals brute-force min-max scaling") {
  const auto& ws = *testing::movies();
  const auto& marks = ws.marks("budget_gross");
  const auto& budget = ws.table().column("budget");
  const auto& gross = ws.table().column("gross");
  double lo = INFINITY;
  double hi = -INFINITY;
  std::size_t complete = 0;
  for (RowId r = 0; r < ws.table().row_count(); ++r) {
    if (budget.missing(r) || gross.missing(r)) continue;
    ++complete;
    lo = std::min(lo, budget.numeric[r]);
    hi = std::max(hi, budget.numeric[r]);
  }
  CHECK(complete == 200);
  REQUIRE(marks.marks.size() == complete);
  for (const auto& m : marks.marks) {
    REQUIRE(m.row_ids.size() == 1);
    CHECK(m.geometry.point.x == doctest::Approx((budget.numeric[m.row_ids[0]] - lo) / (hi - lo)).epsilon(1e-12));
  }
  CHECK_FALSE(marks.legend.empty());
}

TEST_CASE("line charts give one polyline per series ordered by x") {
  const auto t = csv("x,y,s\n3,1,a\n1,2,a\n2,3,b\n0,4,b\n");
  auto s = chart(ChartKind::kLine);
  s.bindings = {{"x", "x"}, {"y", "y"}, {"color", "s"}};
  const auto m = build_marks(s, t);
  REQUIRE(m.marks.size() == 2);
  const auto& a = m.marks[0].geometry.vertices;
  REQUIRE(a.size() == 2);
  CHECK(a[0].x < a[1].x);
  CHECK(m.marks[1].category == "b");
  s.bindings.erase("color");
  CHECK(build_marks(s, t).marks.size() == 1);
}

TEST_CASE("parallel coordinates give one polyline per row across the axes") {
  const auto t = csv("a,b,c\n1,2,3\n4,5,6\n");
  auto s = chart(ChartKind::kParallelCoordinates);
  s.dimensions = {"a", "b", "c"};
  const auto m = build_marks(s, t);
  REQUIRE(m.marks.size() == 2);
  CHECK(m.marks[0].geometry.vertices.size() == 3);
  CHECK(m.axes.size() == 3);
}

TEST_CASE("invalid bindings and empty tables") {
  const auto t = csv("n,c\n1,a\n");
  auto s = chart(ChartKind::kScatter);
  s.bindings = {{"x", "c"}, {"y", "n"}};
  CHECK_THROWS_AS(build_marks(s, t), Error);
  s.bindings = {{"x", "missing"}, {"y", "n"}};
  CHECK_THROWS_AS(build_marks(s, t), Error);
  s.bindings = {{"x", "n"}, {"y", "n"}};
  CHECK(build_marks(s, csv("n,c\n")).marks.empty());
}

TEST_CASE("linked_marks examples") {
  MarkSet set;
  Mark m;
  m.row_ids = {5, 6};
  set.marks.push_back(m);
  CHECK(linked_marks({5}, set) == std::vector<std::uint32_t>{0});
  CHECK(linked_marks({}, set).empty());
}

TEST_CASE("property: linked_marks equals the brute-force definition") {
  testing::Gen g(32);
  for (int i = 0; i < 300; ++i) {
    MarkSet set;
    const auto rows = g.integer(1, 500);
    const auto marks = g.integer(0, 40);
    for (int k = 0; k < marks; ++k) {
      Mark m;
      m.index = static_cast<std::uint32_t>(k);
      std::set<RowId> ids;
      for (auto n = g.integer(1, 20); n > 0; --n) ids.insert(static_cast<RowId>(g.integer(0, rows - 1)));
      m.row_ids.assign(ids.begin(), ids.end());
      set.marks.push_back(m);
    }
    RowSet sel;
    for (auto n = g.integer(0, 30); n > 0; --n) sel.insert(static_cast<RowId>(g.integer(0, rows - 1)));
    std::vector<std::uint32_t> want;
    for (const auto& m : set.marks)
      if (intersects(m.row_ids, sel)) want.push_back(m.index);
    CHECK(linked_marks(sel, set) == want);
  }
}

TEST_CASE("hit_test examples") {
  const auto t = csv("c\na\n");
  auto bar = chart(ChartKind::kBar, {100, 200, 100, 100});
  bar.group_by = "c";
  const auto bars = build_marks(bar, t);
  CHECK(hit_test(bar, bars, mark_anchor_px(bar, bars.marks[0])) == 0u);
  CHECK(hit_test(bar, bars, {101, 201}) == std::nullopt);
  CHECK_THROWS_AS(hit_test(bar, bars, {50, 50}), Error);

  const auto pts = csv("x,y\n0,0\n1,0\n0,1\n");
  auto sc = chart(ChartKind::kScatter, {0, 0, 1000, 1000});
  sc.bindings = {{"x", "x"}, {"y", "y"}};
  auto marks = build_marks(sc, pts);
  // Two overlapping discs with the probe equidistant from both centers.
  marks.marks[1].geometry.point = {0.51, 0.5};
  marks.marks[0].geometry.point = {0.49, 0.5};
  CHECK(hit_test(sc, marks, {500, 500}) == 1u);
  CHECK(hit_test(sc, marks, {500, 500 + kPointRadiusPx + 5}) == std::nullopt);
}

TEST_CASE("property: hit_test agrees with a brute-force disc scan") {
  testing::Gen g(33);
  auto sc = chart(ChartKind::kScatter, {10, 20, 400, 300});
  sc.bindings = {{"x", "x"}, {"y", "y"}};
  for (int i = 0; i < 50; ++i) {
    std::ostringstream out;
    out << "x,y\n";
    for (auto n = g.integer(2, 60); n > 0; --n) out << g.uniform(0, 1) << ',' << g.uniform(0, 1) << '\n';
    const auto marks = build_marks(sc, csv(out.str()));
    for (int k = 0; k < 40; ++k) {
      const Vec2 p{g.uniform(10, 410), g.uniform(20, 320)};
      std::optional<std::uint32_t> want;
      for (const auto& m : marks.marks) {
        const Vec2 c{10 + m.geometry.point.x * 400, 20 + m.geometry.point.y * 300};
        if (std::hypot(p.x - c.x, p.y - c.y) <= kPointRadiusPx) want = m.index;
      }
      CHECK(hit_test(sc, marks, p) == want);
    }
  }
}

TEST_CASE("build_marks is deterministic after canonical serialization") {
  const auto& ws = *testing::movies();
  for (const auto& spec : ws.layout().visualizations) {
    CHECK(canonical_dump(to_json(build_marks(spec, ws.table()))) == canonical_dump(to_json(ws.marks(spec.id))));
  }
}

TEST_CASE("vis spec json round trip") {
  for (const auto& spec : testing::movies()->layout().visualizations) {
    CHECK(canonical_dump(to_json(vis_spec_from_json(to_json(spec)))) == canonical_dump(to_json(spec)));
  }
  CHECK_THROWS_AS(chart_kind_from_string("donut"), Error);
  CHECK(axis_side_from_string("top") == AxisSide::kTop);
}
