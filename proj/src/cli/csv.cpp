#include "cgi/cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "cgi/errors.hpp"

namespace cgi::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), header_(std::move(header)) {
  for (std::size_t i = 0; i < header_.size(); ++i) out_ << (i ? "," : "") << header_[i];
  out_ << '\n';
}

void CsvWriter::check_width(std::size_t n) const {
  if (n != header_.size()) {
    throw Error("CSV row has " + std::to_string(n) + " cells, header has " +
                std::to_string(header_.size()));
  }
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  check_width(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
}

void CsvWriter::row_cells(const std::vector<std::string>& cells) {
  check_width(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void CsvWriter::comment(std::string_view key, double value) {
  out_ << "# " << key << '=' << format_number(value) << '\n';
}

void CsvWriter::comment(std::string_view key, std::string_view text) {
  out_ << "# " << key << '=' << text << '\n';
}

}  // namespace cgi::cli
