#pragma once

// JSON run report: flat object with insertion-ordered keys so repeated runs
// serialize identically; wall-clock time is appended last at write time and
// is the only field allowed to differ between runs.

#include <chrono>
#include <cstdint>
#include <string>

#include "json.hpp"

namespace rdc::cli {

class RunReport {
 public:
  RunReport(const std::string& command, const std::string& units);

  void set(const std::string& key, double v);
  void set(const std::string& key, std::int64_t v);
  void set(const std::string& key, std::size_t v);
  void set(const std::string& key, bool v);
  void set(const std::string& key, const std::string& v);

  void write(const std::string& path) const;

 private:
  mutable nlohmann::ordered_json j_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace rdc::cli
