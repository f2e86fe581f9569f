#pragma once
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "ktm/common.hpp"

namespace ktm {

struct MetricsRow {
  std::string stage;  // "teacher" | "offline" | "online"
  int64_t epoch = 0;
  std::string task;
  double mean_return = 0.0;
  double loss = 0.0;
  int64_t wall_ms = 0;
};

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// CSV sink; writes the header once, flushes after every row, and enforces
// non-decreasing epochs within one (stage, task) series.
class MetricsWriter {
 public:
  explicit MetricsWriter(const std::string& path);
  void append(const MetricsRow& row);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream os_;
  std::map<std::pair<std::string, std::string>, int64_t> last_epoch_;
};

void append_metrics(const std::string& path, const MetricsRow& row);
std::vector<MetricsRow> read_metrics(const std::string& path);

}  // namespace ktm
