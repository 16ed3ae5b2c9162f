#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace dho {

/// A table cell: number, flag, or missing value (empty in CSV, null in JSON).
using Cell = std::variant<std::monostate, double, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest representation that keeps 17 significant digits ("%.17g").
/// Non-finite values render as "nan", "inf" or "-inf".
std::string format_double(double x);

/// Header row plus one line per row, CRLF-free, RFC 4180 quoting.
void write_csv(const Table& table, std::ostream& out);
/// JSON array of row objects keyed by column name.
void write_json(const Table& table, std::ostream& out);

/// Parses CSV produced by write_csv. Numeric fields become doubles,
/// "true"/"false" become flags and empty fields become missing values.
Table parse_csv(const std::string& text);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& s);

}  // namespace dho
