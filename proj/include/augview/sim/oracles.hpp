#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "augview/session/state.hpp"
#include "augview/spatial/pose.hpp"

// Brute-force reference computations used by scenario assertions. They work
// from the raw table and state with plain loops rather than the engine code paths.
namespace augview::sim::oracle {

// Equal-width bins over [min, max] of the rows' values; the last bin is closed.
std::vector<std::uint64_t> histogram(const data::DataTable& table, const std::string& column,
                                     const std::set<data::RowId>& rows, std::size_t bins);

std::map<std::string, std::uint64_t> category_counts(const data::DataTable& table, const std::string& column,
                                                     const std::vector<data::RowId>& rows);

// (source chart, source mark, target chart, target mark) of every link the viewer should see.
using LinkKey = std::tuple<std::string, std::uint32_t, std::string, std::uint32_t>;
std::set<LinkKey> links(const session::SessionState& state, const session::UserId& viewer);

struct HingeExpectation {
  double angle_deg = 0.0;
  spatial::Side hinge = spatial::Side::kRight;
};
// Hinged panel the viewer should see for a chart, if any.
std::optional<HingeExpectation> hinge(const session::SessionState& state, const session::UserId& viewer,
                                      const std::string& vis_id);

}  // namespace augview::sim::oracle
