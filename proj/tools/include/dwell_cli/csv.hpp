#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dwell::cli {

/// Shortest text that round-trips through 17 significant digits.
std::string format_number(double value);

/// Comma-joined row terminated by '\n'. Fields must not contain commas.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Header-indexed CSV table.
class CsvTable {
 public:
  /// Throws ValidationError on an empty input or ragged rows.
  static CsvTable parse(std::istream& in);

  std::size_t rows() const noexcept { return rows_.size(); }
  bool has_column(std::string_view name) const;
  const std::string& text(std::size_t row, std::string_view column) const;
  double number(std::size_t row, std::string_view column) const;

 private:
  std::map<std::string, std::size_t, std::less<>> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace dwell::cli
