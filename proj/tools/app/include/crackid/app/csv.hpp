#pragma once

// CSV tables with a fixed header. Numbers are written with 15 significant
// digits, locale-independent; NaN is written as an empty cell.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace crackid::app {

using Cell = std::variant<double, std::int64_t, std::string>;

std::string format_number(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  /// Throws ValidationError when the row width differs from the header.
  void add(std::vector<Cell> row);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace crackid::app
