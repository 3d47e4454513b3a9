#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccode {

/// Numeric table with a `#`-prefixed comment header.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);

  /// Index of a named column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(const std::string& name) const;

  /// Doubles are written in shortest round-trip form, so output is stable.
  void write(std::ostream& os) const;
  std::string str() const;
};

}  // namespace ccode
