#include "cli/csv.hpp"

#include "rdc/errors.hpp"

namespace rdc::cli {

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : n_cols_(header.size()) {
  f_ = std::fopen(path.c_str(), "wb");
  if (f_ == nullptr)
    throw ConfigError("cannot open output file: " + path);
  row(header);
}

CsvWriter::~CsvWriter() {
  if (f_ != nullptr) std::fclose(f_);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_cols_)
    throw InternalError("csv row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) std::fputc(',', f_);
    std::fputs(cells[i].c_str(), f_);
  }
  std::fputc('\n', f_);
}

std::string CsvWriter::num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace rdc::cli
