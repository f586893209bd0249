#include "semilag/cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace semilag::cli {

namespace {

void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      out << ',';
    }
    out << cells[i];
  }
  out << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return cells;
}

} // namespace

std::string format_value(double v) { return fmt::format("{:.17g}", v); }

void CsvWriter::header(const std::vector<std::string>& columns) { write_line(out_, columns); }

void CsvWriter::row(const std::vector<std::string>& cells) { write_line(out_, cells); }

void CsvWriter::separator() { out_ << '\n'; }

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) {
      return i;
    }
  }
  throw std::out_of_range(fmt::format("csv: no column named '{}'", name));
}

std::vector<double> CsvTable::numbers(std::string_view name) const {
  const std::size_t idx = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    out.push_back(parse_number(row.at(idx)));
  }
  return out;
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(fmt::format("csv: '{}' is not a number", text));
  }
  return value;
}

std::vector<CsvTable> read_csv(std::istream& in) {
  std::vector<CsvTable> tables;
  bool in_table = false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      in_table = false;
      continue;
    }
    if (!in_table) {
      tables.push_back({split(line), {}});
      in_table = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != tables.back().columns.size()) {
      throw std::runtime_error(fmt::format("csv: row has {} cells, header has {}", cells.size(),
                                           tables.back().columns.size()));
    }
    tables.back().rows.push_back(std::move(cells));
  }
  return tables;
}

std::vector<CsvTable> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(fmt::format("csv: cannot open '{}'", path.string()));
  }
  return read_csv(in);
}

} // namespace semilag::cli
