#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace journeynet::csv {

/// A parsed CSV file with a mandatory header row.
struct Table {
  std::string source;  ///< file name used in diagnostics
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line;  ///< 1-based physical line of each row

  /// Column index by name; throws ParseError naming the header if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

/// RFC 4180-style parsing: comma separator, double-quote quoting, CRLF or LF.
/// Lines starting with '#' before the header are skipped (metadata blocks).
/// Throws ParseError on a missing header or a row with the wrong field count.
Table parse(std::istream& in, std::string source);
Table read_file(const std::string& path);

/// Typed field accessors that raise ParseError(row, column) on bad input.
double to_double(const Table& t, std::size_t row, std::size_t col);
long long to_integer(const Table& t, std::size_t row, std::size_t col);

/// Quotes a field only when it needs it.
std::string escape(std::string_view field);

/// Shortest round-trip decimal form, locale-independent.
std::string format_number(double value);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace journeynet::csv
