#pragma once

#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gsqg::csv {

/// Shortest decimal string that parses back to the same double.
std::string format(double value);

/// CSV file with a "# schema: <name> v<version>" line and a header row.
/// Throws IoError when the file cannot be opened or written.
class Writer {
 public:
  Writer(const std::string& path, const std::string& schema, int version,
         const std::vector<std::string>& columns);

  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span(values.begin(), values.size())); }
  std::size_t columns() const noexcept { return columns_; }
  void flush();

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace gsqg::csv
