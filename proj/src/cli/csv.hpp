#pragma once

// CSV emitter for curve output: UTF-8, LF line endings on every platform,
// floats at full round-trip precision.

#include <cstdio>
#include <string>
#include <vector>

namespace rdc::cli {

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& cells);

  // Full-precision decimal rendering of a double (%.17g).
  static std::string num(double v);

 private:
  std::FILE* f_ = nullptr;
  std::size_t n_cols_ = 0;
};

}  // namespace rdc::cli
