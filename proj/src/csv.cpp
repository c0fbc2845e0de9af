#include "gsqg/csv.hpp"

#include <charconv>
#include <cmath>

#include "gsqg/errors.hpp"

namespace gsqg::csv {

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Writer::Writer(const std::string& path, const std::string& schema, int version,
               const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(columns.size()) {
  if (!out_) throw IoError("cannot open " + path + " for writing");
  out_ << "# schema: " << schema << " v" << version << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void Writer::row(std::span<const double> values) {
  if (values.size() != columns_)
    throw IoError(path_ + ": row has " + std::to_string(values.size()) + " fields, expected " +
                  std::to_string(columns_));
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format(values[i]);
  out_ << '\n';
  if (!out_) throw IoError("write to " + path_ + " failed");
}

void Writer::flush() {
  out_.flush();
  if (!out_) throw IoError("write to " + path_ + " failed");
}

}  // namespace gsqg::csv
