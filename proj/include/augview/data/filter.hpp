#pragma once

#include <functional>
#include <string>
#include <vector>

#include "augview/common/canonical_json.hpp"
#include "augview/data/table.hpp"

namespace augview::data {

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe, kIn };

// One comparison against a column. Quantitative columns compare numerically
// (dates are written YYYY-MM-DD); categorical columns compare the text.
// A missing value never matches.
struct Clause {
  std::string column;
  CompareOp op = CompareOp::kEq;
  std::vector<std::string> values;  // exactly one unless op == kIn

  friend bool operator==(const Clause&, const Clause&) = default;
};

// Conjunction of clauses; the empty filter accepts every row.
struct Filter {
  std::vector<Clause> clauses;

  bool empty() const { return clauses.empty(); }
  friend bool operator==(const Filter&, const Filter&) = default;
};

using RowPredicate = std::function<bool(RowId)>;

// Validates column names and operand types up front. Throws Error(kUnknownColumn)
// or Error(kBadParams).
RowPredicate compile(const Filter& filter, const DataTable& table);

RowPredicate accept_all();
RowPredicate both(RowPredicate a, RowPredicate b);

// JSON form: an array of {"column": c, "op": "eq", "value": v} objects;
// "in" takes "values": [...] instead of "value".
json to_json(const Filter& filter);
Filter filter_from_json(const json& j);

}  // namespace augview::data
