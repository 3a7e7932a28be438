#include "augview/data/filter.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "augview/common/error.hpp"

namespace augview::data {

namespace {

constexpr std::pair<CompareOp, std::string_view> kOpNames[] = {
    {CompareOp::kEq, "eq"}, {CompareOp::kNe, "ne"}, {CompareOp::kLt, "lt"}, {CompareOp::kLe, "le"},
    {CompareOp::kGt, "gt"}, {CompareOp::kGe, "ge"}, {CompareOp::kIn, "in"},
};

std::string_view op_name(CompareOp op) {
  for (const auto& [o, n] : kOpNames) {
    if (o == op) return n;
  }
  return "eq";
}

CompareOp op_from_name(std::string_view name) {
  for (const auto& [o, n] : kOpNames) {
    if (n == name) return o;
  }
  throw Error(ErrorCode::kBadParams, "unknown filter op '" + std::string(name) + "'");
}

template <typename T>
bool compare(CompareOp op, const T& lhs, const T& rhs) {
  switch (op) {
    case CompareOp::kEq:
    case CompareOp::kIn: return lhs == rhs;
    case CompareOp::kNe: return lhs != rhs;
    case CompareOp::kLt: return lhs < rhs;
    case CompareOp::kLe: return lhs <= rhs;
    case CompareOp::kGt: return lhs > rhs;
    case CompareOp::kGe: return lhs >= rhs;
  }
  return false;
}

struct CompiledClause {
  const Column* column = nullptr;
  CompareOp op = CompareOp::kEq;
  std::vector<std::string> text;
  std::vector<double> numbers;

  bool matches(RowId row) const {
    if (column->missing(row)) return false;
    if (column->is_quantitative()) {
      const double v = column->numeric[row];
      if (op == CompareOp::kIn) return std::find(numbers.begin(), numbers.end(), v) != numbers.end();
      return compare(op, v, numbers.front());
    }
    const std::string& v = column->text[row];
    if (op == CompareOp::kIn) return std::find(text.begin(), text.end(), v) != text.end();
    return compare(op, v, text.front());
  }
};

}  // namespace

RowPredicate accept_all() {
  return [](RowId) { return true; };
}

RowPredicate both(RowPredicate a, RowPredicate b) {
  if (!a) return b;
  if (!b) return a;
  return [a = std::move(a), b = std::move(b)](RowId r) { return a(r) && b(r); };
}

RowPredicate compile(const Filter& filter, const DataTable& table) {
  if (filter.empty()) return accept_all();
  auto compiled = std::make_shared<std::vector<CompiledClause>>();
  for (const auto& clause : filter.clauses) {
    CompiledClause cc;
    cc.column = &table.column(clause.column);
    cc.op = clause.op;
    if (clause.values.empty() || (clause.op != CompareOp::kIn && clause.values.size() != 1)) {
      throw Error(ErrorCode::kBadParams, "clause on '" + clause.column + "' has wrong operand count");
    }
    cc.text = clause.values;
    if (cc.column->is_quantitative()) {
      for (const auto& v : clause.values) {
        auto n = cc.column->kind == DimensionKind::kTemporal ? parse_iso_date(v) : parse_number(v);
        if (!n) n = parse_number(v);
        if (!n) {
          throw Error(ErrorCode::kBadParams,
                      "operand '" + v + "' is not comparable with column '" + clause.column + "'");
        }
        cc.numbers.push_back(*n);
      }
    }
    compiled->push_back(std::move(cc));
  }
  return [compiled](RowId r) {
    for (const auto& c : *compiled) {
      if (!c.matches(r)) return false;
    }
    return true;
  };
}

json to_json(const Filter& filter) {
  json out = json::array();
  for (const auto& c : filter.clauses) {
    json j{{"column", c.column}, {"op", op_name(c.op)}};
    if (c.op == CompareOp::kIn) {
      j["values"] = c.values;
    } else {
      j["value"] = c.values.empty() ? std::string() : c.values.front();
    }
    out.push_back(std::move(j));
  }
  return out;
}

Filter filter_from_json(const json& j) {
  Filter f;
  if (j.is_null()) return f;
  if (!j.is_array()) throw Error(ErrorCode::kBadParams, "filter must be an array of clauses");
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("column")) {
      throw Error(ErrorCode::kBadParams, "filter clause needs a 'column'");
    }
    Clause c;
    c.column = e.at("column").get<std::string>();
    c.op = op_from_name(e.value("op", std::string("eq")));
    auto as_text = [](const json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (c.op == CompareOp::kIn) {
      if (!e.contains("values") || !e.at("values").is_array()) {
        throw Error(ErrorCode::kBadParams, "'in' clause needs 'values'");
      }
      for (const auto& v : e.at("values")) c.values.push_back(as_text(v));
    } else {
      if (!e.contains("value")) throw Error(ErrorCode::kBadParams, "clause needs 'value'");
      c.values.push_back(as_text(e.at("value")));
    }
    f.clauses.push_back(std::move(c));
  }
  return f;
}

}  // namespace augview::data
