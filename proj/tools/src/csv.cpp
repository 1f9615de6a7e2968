#include "dwell_cli/csv.hpp"

#include <fmt/format.h>

#include <sstream>

#include "dwell/errors.hpp"

namespace dwell::cli {

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << fields[i];
  }
  out << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable CsvTable::parse(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("csv: empty input");
  const auto header = split(line);
  for (std::size_t i = 0; i < header.size(); ++i) table.columns_.emplace(header[i], i);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = split(line);
    if (fields.size() != header.size()) {
      throw ValidationError("csv: row " + std::to_string(table.rows_.size() + 1) +
                            " has " + std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
    }
    table.rows_.push_back(std::move(fields));
  }
  return table;
}

bool CsvTable::has_column(std::string_view name) const {
  return columns_.find(name) != columns_.end();
}

const std::string& CsvTable::text(std::size_t row, std::string_view column) const {
  const auto it = columns_.find(column);
  if (it == columns_.end()) {
    throw ValidationError("csv: missing column '" + std::string(column) + "'");
  }
  return rows_.at(row).at(it->second);
}

double CsvTable::number(std::size_t row, std::string_view column) const {
  const std::string& s = text(row, column);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("csv: '" + s + "' in column '" + std::string(column) +
                          "' is not a number");
  }
  if (used != s.size()) {
    throw ValidationError("csv: trailing characters in '" + s + "'");
  }
  return value;
}

}  // namespace dwell::cli
