#include "augview/data/table.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <set>

#include "augview/common/error.hpp"

namespace augview::data {

namespace {

// Splits the whole input into records. Quoted fields may contain separators,
// doubled quotes and line breaks. A trailing line break does not start a record.
std::vector<std::vector<std::string>> parse_records(std::string_view src) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  while (i < src.size()) {
    const char c = src[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < src.size() && src[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
      } else {
        field += c;
      }
      ++i;
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < src.size() && src[i + 1] == '\n') {
      end_record();
      ++i;
    } else if (c == '\n') {
      end_record();
    } else {
      field += c;
      field_started = true;
    }
    ++i;
  }
  if (in_quotes) throw Error(ErrorCode::kRaggedRow, "unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view s) {
  if (!needs_quotes(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

std::string_view to_string(DimensionKind kind) {
  switch (kind) {
    case DimensionKind::kCategorical: return "categorical";
    case DimensionKind::kNumeric: return "numeric";
    case DimensionKind::kTemporal: return "temporal";
  }
  return "categorical";
}

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<double> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, v);
    if (ec != std::errc() || ptr != text.data() + pos + len) return std::nullopt;
    for (std::size_t k = pos; k < pos + len; ++k) {
      if (text[k] < '0' || text[k] > '9') return std::nullopt;
    }
    return v;
  };
  const auto y = digits(0, 4);
  const auto m = digits(5, 2);
  const auto d = digits(8, 2);
  if (!y || !m || !d) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*y},
                                        std::chrono::month{static_cast<unsigned>(*m)},
                                        std::chrono::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return static_cast<double>(std::chrono::sys_days{ymd}.time_since_epoch().count());
}

std::string format_iso_date(double days_since_epoch) {
  const std::chrono::sys_days day{std::chrono::days{static_cast<long>(std::floor(days_since_epoch))}};
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

DimensionKind infer_dimension(std::span<const std::string> values) {
  bool any = false;
  bool numeric = true;
  bool temporal = true;
  for (const auto& v : values) {
    if (v.empty()) continue;
    any = true;
    if (numeric && !parse_number(v)) numeric = false;
    if (temporal && !parse_iso_date(v)) temporal = false;
    if (!numeric && !temporal) break;
  }
  if (!any) return DimensionKind::kCategorical;
  if (numeric) return DimensionKind::kNumeric;
  if (temporal) return DimensionKind::kTemporal;
  return DimensionKind::kCategorical;
}

DataTable::DataTable(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  std::set<std::string_view> names;
  for (const auto& c : columns_) {
    if (!names.insert(c.name).second) {
      throw Error(ErrorCode::kDuplicateColumn, "column '" + c.name + "' appears twice");
    }
  }
  if (!columns_.empty()) row_count_ = columns_.front().text.size();
  for (const auto& c : columns_) {
    if (c.text.size() != row_count_ || c.numeric.size() != row_count_) {
      throw Error(ErrorCode::kRaggedRow, "column '" + c.name + "' has inconsistent length");
    }
  }
}

const Column* DataTable::find(std::string_view column) const {
  for (const auto& c : columns_) {
    if (c.name == column) return &c;
  }
  return nullptr;
}

const Column& DataTable::column(std::string_view column) const {
  if (const auto* c = find(column)) return *c;
  throw Error(ErrorCode::kUnknownColumn, "no column '" + std::string(column) + "' in table '" + name_ + "'");
}

DataTable load_table(std::istream& in, std::string name) {
  const std::string src{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto records = parse_records(src);
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no header record");

  const auto& header = records.front();
  std::vector<Column> columns(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    columns[c].name = header[c];
    columns[c].text.reserve(records.size() - 1);
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw Error(ErrorCode::kRaggedRow, "record " + std::to_string(r) + " has " +
                                             std::to_string(rec.size()) + " fields, header has " +
                                             std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < rec.size(); ++c) columns[c].text.push_back(std::move(rec[c]));
  }
  for (auto& col : columns) {
    col.kind = infer_dimension(col.text);
    col.numeric.assign(col.text.size(), std::numeric_limits<double>::quiet_NaN());
    if (col.kind == DimensionKind::kCategorical) continue;
    for (std::size_t r = 0; r < col.text.size(); ++r) {
      if (col.text[r].empty()) continue;
      col.numeric[r] = col.kind == DimensionKind::kNumeric ? *parse_number(col.text[r])
                                                           : *parse_iso_date(col.text[r]);
    }
  }
  return DataTable(std::move(name), std::move(columns));
}

DataTable load_table_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kEmptyInput, "cannot open '" + path.string() + "'");
  return load_table(in, path.stem().string());
}

void write_csv(std::ostream& out, const DataTable& table) {
  const auto& cols = table.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out << ',';
    write_field(out, cols[c].name);
  }
  out << '\n';
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out << ',';
      write_field(out, cols[c].text[r]);
    }
    out << '\n';
  }
}

}  // namespace augview::data
