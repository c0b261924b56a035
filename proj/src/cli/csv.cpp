#include "fockgate/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fockgate::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header)
    : os_(os), width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != width_) {
    throw std::invalid_argument("csv: row has " + std::to_string(cells.size()) +
                                " cells, header has " + std::to_string(width_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, std::string>) os_ << c;
          else if constexpr (std::is_same_v<T, double>) os_ << format_double(c);
          else if constexpr (std::is_same_v<T, std::int64_t>) os_ << c;
        },
        cells[i]);
  }
  os_ << '\n';
}

}  // namespace fockgate::cli
