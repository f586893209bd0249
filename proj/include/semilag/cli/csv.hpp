#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace semilag::cli {

/// Formats a value with 17 significant digits, enough to round-trip a double.
std::string format_value(double v);

/// Writes one header row and data rows, comma-separated with LF endings.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  /// Blank line separating two tables in one file.
  void separator();

private:
  std::ostream& out_;
};

/// One header-plus-rows block.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
  /// Column parsed as doubles at full precision.
  std::vector<double> numbers(std::string_view name) const;
};

/// Parses a file written by CsvWriter; blank lines split it into tables.
std::vector<CsvTable> read_csv(std::istream& in);
std::vector<CsvTable> read_csv(const std::filesystem::path& path);

double parse_number(std::string_view text);

} // namespace semilag::cli
