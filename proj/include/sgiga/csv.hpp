#pragma once

#include <string>
#include <vector>

namespace sgiga {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);

/// Comma-separated table with a header row and LF line endings. Fields are
/// plain numbers and identifiers, so no quoting is performed.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& row);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string text_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position by name; throws if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);

}  // namespace sgiga
