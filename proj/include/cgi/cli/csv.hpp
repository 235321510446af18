#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cgi::cli {

/// Shortest form that still carries 17 significant digits, so values round-trip.
std::string format_number(double value);

/// Comma-separated rows with a fixed header; trailing metadata as `# key=value` lines.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  /// Mixed text and numeric cells (text is written verbatim).
  void row_cells(const std::vector<std::string>& cells);
  void comment(std::string_view key, double value);
  void comment(std::string_view key, std::string_view text);

  std::size_t columns() const { return header_.size(); }

 private:
  void check_width(std::size_t n) const;

  std::ostream& out_;
  std::vector<std::string> header_;
};

}  // namespace cgi::cli
