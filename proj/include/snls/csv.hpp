#pragma once

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace snls::csv {

/// `%.17g` rendering shared by every CSV writer, so values round-trip exactly.
std::string format(double v);

void write_header(std::ostream& os, std::initializer_list<std::string_view> columns);
void write_row(std::ostream& os, std::span<const double> values);
void write_row(std::ostream& os, std::initializer_list<double> values);

/// Parsed numeric table; the header is kept for column lookup.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws IoError if missing.
  std::size_t column(std::string_view name) const;
};

/// Reads a header line followed by numeric rows. Throws IoError on bad input.
Table read(std::istream& is);

}  // namespace snls::csv
