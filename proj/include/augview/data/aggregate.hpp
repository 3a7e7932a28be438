#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "augview/common/canonical_json.hpp"
#include "augview/data/filter.hpp"
#include "augview/data/table.hpp"

namespace augview::data {

// Bins are half-open [e_i, e_i+1) except the last one, which is closed.
struct Histogram {
  std::string dimension;
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  // Set when no row passed the filter; edges then span [0, 1].
  bool no_rows = false;

  std::uint64_t total() const;
};

// Either an equal-width bin count over [min, max] of the filtered values,
// or explicit strictly increasing edges. Values outside explicit edges are not counted.
using BinSpec = std::variant<std::size_t, std::vector<double>>;

// Width of the single bin used when every filtered value is identical.
inline constexpr double kDegenerateBinWidth = 1.0;

Histogram aggregate(const DataTable& table, std::string_view dimension, const BinSpec& bins,
                    const RowPredicate& filter = {});

using CategoryCounts = std::vector<std::pair<std::string, std::uint64_t>>;

// One entry per distinct category of the filtered rows, sorted by text.
// Rows with a missing key are skipped.
CategoryCounts group_count(const DataTable& table, std::string_view key,
                           const RowPredicate& filter = {});

json to_json(const Histogram& h);

}  // namespace augview::data
