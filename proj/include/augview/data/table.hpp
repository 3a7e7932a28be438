#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace augview::data {

// Zero-based load-order index. Assigned once by load_table and never reused.
using RowId = std::uint32_t;

enum class DimensionKind { kCategorical, kNumeric, kTemporal };

std::string_view to_string(DimensionKind kind);

struct Column {
  std::string name;
  DimensionKind kind = DimensionKind::kCategorical;
  // Raw field text as loaded; an empty string marks a missing value.
  std::vector<std::string> text;
  // Numeric view: the value for numeric columns, days since 1970-01-01 for
  // temporal columns, NaN for missing values and categorical columns.
  std::vector<double> numeric;

  bool missing(RowId row) const { return text[row].empty(); }
  bool is_quantitative() const { return kind != DimensionKind::kCategorical; }
};

class DataTable {
 public:
  DataTable() = default;
  DataTable(std::string name, std::vector<Column> columns);

  const std::string& name() const { return name_; }
  std::size_t row_count() const { return row_count_; }
  const std::vector<Column>& columns() const { return columns_; }

  const Column* find(std::string_view column) const;
  // Throws Error(kUnknownColumn).
  const Column& column(std::string_view column) const;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
};

// RFC-4180 style CSV: comma separator, double-quote quoting, first record is the header.
DataTable load_table(std::istream& in, std::string name);
DataTable load_table_file(const std::filesystem::path& path);

// Writes the table back in the same dialect; load_table(write_csv(t)) reproduces t.
void write_csv(std::ostream& out, const DataTable& table);

DimensionKind infer_dimension(std::span<const std::string> values);

// Finite real number, whole string consumed.
std::optional<double> parse_number(std::string_view text);
// YYYY-MM-DD calendar date, returned as days since 1970-01-01.
std::optional<double> parse_iso_date(std::string_view text);
std::string format_iso_date(double days_since_epoch);

}  // namespace augview::data
