#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace bimot {

// Shortest round-trippable decimal representation ("%.17g"); output is
// byte-stable for identical doubles regardless of worker count.
std::string format_double(double value);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void comment(const std::string& text);                 // "# text"
  void columns(const std::vector<std::string>& names);   // "# columns: a,b"
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);
  bool good() const { return out_.good(); }

 private:
  std::ofstream out_;
};

}  // namespace bimot
