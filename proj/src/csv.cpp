#include "bimot/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace bimot {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open output file '" + path + "'");
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::columns(const std::vector<std::string>& names) {
  out_ << "# columns: ";
  for (size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_double(values[i]);
  out_ << "\n";
}

void CsvWriter::raw_row(const std::string& line) { out_ << line << "\n"; }

}  // namespace bimot
