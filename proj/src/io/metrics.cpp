#include "ktm/io/metrics.hpp"

#include <charconv>
#include <filesystem>
#include <sstream>

namespace ktm {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  KTM_REQUIRE(ec == std::errc(), "format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

constexpr const char* kHeader = "stage,epoch,task,mean_return,loss,wall_ms";

std::string format_row(const MetricsRow& r) {
  std::ostringstream os;
  os << r.stage << ',' << r.epoch << ',' << r.task << ',' << format_double(r.mean_return) << ','
     << format_double(r.loss) << ',' << r.wall_ms << '\n';
  return os.str();
}

}  // namespace

MetricsWriter::MetricsWriter(const std::string& path) : path_(path) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  os_.open(path, std::ios::app);
  if (!os_) throw IoError(IoErrc::open_failed, "cannot open metrics file: " + path);
  if (fresh) {
    os_ << kHeader << '\n';
    os_.flush();
  }
}

void MetricsWriter::append(const MetricsRow& row) {
  auto key = std::make_pair(row.stage, row.task);
  auto it = last_epoch_.find(key);
  if (it != last_epoch_.end()) {
    KTM_REQUIRE(row.epoch >= it->second, "metrics: epochs must be non-decreasing per series");
    it->second = row.epoch;
  } else {
    last_epoch_.emplace(key, row.epoch);
  }
  os_ << format_row(row);
  os_.flush();
  if (!os_) throw IoError(IoErrc::open_failed, "metrics write failed: " + path_);
}

void append_metrics(const std::string& path, const MetricsRow& row) {
  MetricsWriter w(path);
  w.append(row);
}

std::vector<MetricsRow> read_metrics(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError(IoErrc::open_failed, "cannot open metrics file: " + path);
  std::vector<MetricsRow> rows;
  std::string line;
  bool first = true;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (first) {
      first = false;
      if (line != kHeader) throw IoError(IoErrc::parse, "bad metrics header: " + path);
      continue;
    }
    if (line.empty()) continue;
    std::array<std::string, 6> f;
    size_t start = 0;
    for (int i = 0; i < 6; ++i) {
      const size_t comma = line.find(',', start);
      if (i < 5 && comma == std::string::npos) {
        throw IoError(IoErrc::parse,
                      "bad metrics row at line " + std::to_string(line_no) + ": " + path);
      }
      f[i] = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      start = comma + 1;
    }
    MetricsRow r;
    r.stage = f[0];
    r.task = f[2];
    auto to_i64 = [&](const std::string& s) {
      int64_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw IoError(IoErrc::parse,
                      "bad integer at line " + std::to_string(line_no) + ": " + path);
      }
      return v;
    };
    auto to_f64 = [&](const std::string& s) {
      double v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw IoError(IoErrc::parse,
                      "bad number at line " + std::to_string(line_no) + ": " + path);
      }
      return v;
    };
    r.epoch = to_i64(f[1]);
    r.mean_return = to_f64(f[3]);
    r.loss = to_f64(f[4]);
    r.wall_ms = to_i64(f[5]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ktm
