#include "augview/data/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "augview/common/error.hpp"

namespace augview::data {

std::uint64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram aggregate(const DataTable& table, std::string_view dimension, const BinSpec& bins,
                    const RowPredicate& filter) {
  const Column& col = table.column(dimension);
  if (!col.is_quantitative()) {
    throw Error(ErrorCode::kNonNumericDimension,
                "column '" + col.name + "' is " + std::string(to_string(col.kind)));
  }

  std::vector<double> values;
  for (RowId r = 0; r < table.row_count(); ++r) {
    if (col.missing(r)) continue;
    if (filter && !filter(r)) continue;
    values.push_back(col.numeric[r]);
  }

  Histogram h;
  h.dimension = col.name;
  if (const auto* explicit_edges = std::get_if<std::vector<double>>(&bins)) {
    if (explicit_edges->size() < 2 ||
        std::adjacent_find(explicit_edges->begin(), explicit_edges->end(),
                           [](double a, double b) { return !(a < b); }) != explicit_edges->end()) {
      throw Error(ErrorCode::kBadParams, "bin edges must be strictly increasing with at least two entries");
    }
    h.bin_edges = *explicit_edges;
  } else {
    const std::size_t count = std::get<std::size_t>(bins);
    if (count == 0) throw Error(ErrorCode::kBadParams, "bin count must be positive");
    if (values.empty()) {
      h.no_rows = true;
      for (std::size_t i = 0; i <= count; ++i) h.bin_edges.push_back(static_cast<double>(i) / count);
      h.counts.assign(count, 0);
      return h;
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) {
      h.bin_edges = {lo, lo + kDegenerateBinWidth};
    } else {
      h.bin_edges.resize(count + 1);
      for (std::size_t i = 0; i < count; ++i) {
        h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count);
      }
      h.bin_edges[count] = hi;
    }
  }

  h.no_rows = values.empty();
  h.counts.assign(h.bin_edges.size() - 1, 0);
  const double first = h.bin_edges.front();
  const double last = h.bin_edges.back();
  for (double v : values) {
    if (v < first || v > last) continue;
    if (v == last) {
      ++h.counts.back();
      continue;
    }
    // upper_bound finds the first edge strictly above v; v belongs to the bin before it.
    const auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), v);
    ++h.counts[static_cast<std::size_t>(it - h.bin_edges.begin()) - 1];
  }
  return h;
}

CategoryCounts group_count(const DataTable& table, std::string_view key, const RowPredicate& filter) {
  const Column& col = table.column(key);
  if (col.kind != DimensionKind::kCategorical) {
    throw Error(ErrorCode::kNonCategoricalKey,
                "column '" + col.name + "' is " + std::string(to_string(col.kind)));
  }
  std::map<std::string, std::uint64_t> tally;
  for (RowId r = 0; r < table.row_count(); ++r) {
    if (col.missing(r)) continue;
    if (filter && !filter(r)) continue;
    ++tally[col.text[r]];
  }
  return {tally.begin(), tally.end()};
}

json to_json(const Histogram& h) {
  return json{{"dimension", h.dimension}, {"bin_edges", h.bin_edges}, {"counts", h.counts},
              {"no_rows", h.no_rows}};
}

}  // namespace augview::data
