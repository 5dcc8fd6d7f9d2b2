#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ivm {

/// Header, rows of preformatted cells, and trailing '#' comment lines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;

  /// Throws ConfigError when the row width differs from the header.
  void add_row(std::vector<std::string> row);
  std::size_t column(std::string_view name) const;
  const std::string& cell(std::size_t row, std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

/// Shortest round-trip-safe formatting: 17 significant digits, '.' decimal.
std::string format_real(double x);
std::string format_int(long long x);

/// RFC-4180 text (CRLF line ends, quoting only where needed).
std::string to_csv(const CsvTable& table);
/// Inverse of to_csv; '#' lines after the header become footer entries.
CsvTable parse_csv(std::string_view text);

void write_csv(const CsvTable& table, const std::filesystem::path& path);

}  // namespace ivm
