#pragma once

// Minimal CSV output: header row, comma separated, '.' decimal point, doubles
// in shortest round-trip form independent of the locale.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fockgate::cli {

std::string format_double(double v);

using Cell = std::variant<std::monostate, std::string, double, std::int64_t>;

inline Cell opt_cell(const std::optional<double>& v) {
  return v ? Cell{*v} : Cell{};
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header);
  /// Throws std::invalid_argument when the row width differs from the header.
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& os_;
  std::size_t width_;
};

}  // namespace fockgate::cli
