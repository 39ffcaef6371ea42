#include "cli/report.hpp"

#include <fstream>

#include "rdc/errors.hpp"
#include "rdc/version.hpp"

namespace rdc::cli {

RunReport::RunReport(const std::string& command, const std::string& units)
    : start_(std::chrono::steady_clock::now()) {
  j_["command"] = command;
  j_["version"] = RDC_LAB_VERSION;
  j_["units"] = units;
}

void RunReport::set(const std::string& key, double v) { j_[key] = v; }
void RunReport::set(const std::string& key, std::int64_t v) { j_[key] = v; }
void RunReport::set(const std::string& key, std::size_t v) {
  j_[key] = static_cast<std::uint64_t>(v);
}
void RunReport::set(const std::string& key, bool v) { j_[key] = v; }
void RunReport::set(const std::string& key, const std::string& v) {
  j_[key] = v;
}

void RunReport::write(const std::string& path) const {
  const auto elapsed = std::chrono::steady_clock::now() - start_;
  j_["wall_time_s"] =
      std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open report file: " + path);
  out << j_.dump(2) << '\n';
}

}  // namespace rdc::cli
