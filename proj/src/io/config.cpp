#include "ktm/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace ktm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
  throw IoError(IoErrc::parse, "config line " + std::to_string(line_no) + ": " + msg);
}

[[noreturn]] void range_fail(const std::string& key, const std::string& msg) {
  throw IoError(IoErrc::range, "config key '" + key + "': " + msg);
}

double parse_f64(const std::string& key, const std::string& v, int line_no) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    parse_fail(line_no, "expected a number for '" + key + "', got '" + v + "'");
  }
  return out;
}

int64_t parse_i64(const std::string& key, const std::string& v, int line_no) {
  int64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    parse_fail(line_no, "expected an integer for '" + key + "', got '" + v + "'");
  }
  return out;
}

uint64_t parse_u64(const std::string& key, const std::string& v, int line_no) {
  uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    parse_fail(line_no, "expected an unsigned integer for '" + key + "', got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v, int line_no) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  parse_fail(line_no, "expected a boolean for '" + key + "', got '" + v + "'");
}

std::vector<int> parse_widths(const std::string& key, const std::string& v, int line_no) {
  std::vector<int> out;
  size_t start = 0;
  while (start <= v.size()) {
    const size_t comma = v.find(',', start);
    const std::string part =
        trim(v.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (part.empty()) parse_fail(line_no, "empty width in '" + key + "'");
    const int64_t w = parse_i64(key, part, line_no);
    if (w < 1 || w > 65536) range_fail(key, "width must be in [1, 65536]");
    out.push_back(int(w));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) parse_fail(line_no, "expected at least one width for '" + key + "'");
  return out;
}

}  // namespace

int64_t default_teacher_steps(int task_id) {
  switch (task_id) {
    case 0:
    case 4: return 30000;
    default: return 20000;
  }
}

const std::vector<std::string>& valid_modes() {
  static const std::vector<std::string> modes = {
      "full",          "no-offline",          "no-online", "online-no-teacher",
      "online-only-teacher", "no-her",        "td3-mt"};
  return modes;
}

RunConfig default_config() { return RunConfig{}; }

void apply_config_line(RunConfig& cfg, const std::string& raw, int line_no) {
  std::string line = raw;
  const auto hash = line.find('#');
  if (hash != std::string::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty()) return;

  const auto eq = line.find('=');
  if (eq == std::string::npos) parse_fail(line_no, "expected 'key = value'");
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty()) parse_fail(line_no, "empty key");
  if (value.empty()) parse_fail(line_no, "empty value for '" + key + "'");

  if (key == "gamma") {
    cfg.hp.gamma = parse_f64(key, value, line_no);
    if (cfg.hp.gamma <= 0.0 || cfg.hp.gamma > 1.0) range_fail(key, "must be in (0, 1]");
  } else if (key == "tau") {
    cfg.hp.tau = parse_f64(key, value, line_no);
    if (cfg.hp.tau <= 0.0 || cfg.hp.tau > 1.0) range_fail(key, "must be in (0, 1]");
  } else if (key == "explore_sigma") {
    cfg.hp.explore_sigma = parse_f64(key, value, line_no);
    if (cfg.hp.explore_sigma < 0.0) range_fail(key, "must be >= 0");
  } else if (key == "target_noise_sigma") {
    cfg.hp.target_noise_sigma = parse_f64(key, value, line_no);
    if (cfg.hp.target_noise_sigma < 0.0) range_fail(key, "must be >= 0");
  } else if (key == "noise_clip") {
    cfg.hp.noise_clip = parse_f64(key, value, line_no);
    if (cfg.hp.noise_clip < 0.0) range_fail(key, "must be >= 0");
  } else if (key == "policy_delay") {
    const int64_t v = parse_i64(key, value, line_no);
    if (v < 1 || v > 1000000) range_fail(key, "must be >= 1");
    cfg.hp.policy_delay = int(v);
  } else if (key == "batch") {
    const int64_t v = parse_i64(key, value, line_no);
    if (v < 1 || v > 1000000) range_fail(key, "must be >= 1");
    cfg.hp.batch = int(v);
  } else if (key == "lr") {
    cfg.hp.lr = parse_f64(key, value, line_no);
    if (cfg.hp.lr <= 0.0) range_fail(key, "must be > 0");
  } else if (key == "alpha") {
    cfg.hp.alpha = parse_f64(key, value, line_no);
    if (cfg.hp.alpha < 0.0) range_fail(key, "must be >= 0");
  } else if (key == "beta") {
    cfg.hp.beta = parse_f64(key, value, line_no);
    if (cfg.hp.beta < 0.0) range_fail(key, "must be >= 0");
  } else if (key == "t_off") {
    cfg.hp.t_off = parse_i64(key, value, line_no);
    if (cfg.hp.t_off < 0) range_fail(key, "must be >= 0");
  } else if (key == "t_on") {
    cfg.hp.t_on = parse_i64(key, value, line_no);
    if (cfg.hp.t_on < 0) range_fail(key, "must be >= 0");
  } else if (key == "teacher_hidden") {
    cfg.teacher_hidden = parse_widths(key, value, line_no);
  } else if (key == "student_hidden") {
    cfg.student_hidden = parse_widths(key, value, line_no);
  } else if (key == "buffer_capacity") {
    cfg.buffer_capacity = parse_i64(key, value, line_no);
    if (cfg.buffer_capacity < 1) range_fail(key, "must be >= 1");
  } else if (key == "warmup_steps") {
    const int64_t v = parse_i64(key, value, line_no);
    if (v < 0 || v > 1000000000) range_fail(key, "must be >= 0");
    cfg.warmup_steps = int(v);
  } else if (key == "teacher_steps") {
    cfg.teacher_steps = parse_i64(key, value, line_no);
    if (cfg.teacher_steps < 0) range_fail(key, "must be >= 0");
  } else if (key == "collect_steps") {
    cfg.collect_steps = parse_i64(key, value, line_no);
    if (cfg.collect_steps < 1) range_fail(key, "must be >= 1");
  } else if (key == "eval_episodes") {
    const int64_t v = parse_i64(key, value, line_no);
    if (v < 1 || v > 1000000) range_fail(key, "must be >= 1");
    cfg.eval_episodes = int(v);
  } else if (key == "eval_interval") {
    cfg.eval_interval = parse_i64(key, value, line_no);
    if (cfg.eval_interval < 1) range_fail(key, "must be >= 1");
  } else if (key == "task_onehot") {
    cfg.task_onehot = parse_bool(key, value, line_no);
  } else if (key == "jobs") {
    const int64_t v = parse_i64(key, value, line_no);
    if (v < 1 || v > 256) range_fail(key, "must be in [1, 256]");
    cfg.jobs = int(v);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value, line_no);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "tasks") {
    cfg.tasks = value;
  } else if (key == "mode") {
    const auto& modes = valid_modes();
    if (std::find(modes.begin(), modes.end(), value) == modes.end()) {
      range_fail(key, "unknown mode '" + value + "'");
    }
    cfg.mode = value;
  } else if (key == "overwrite") {
    cfg.overwrite = parse_bool(key, value, line_no);
  } else if (key == "steps") {
    cfg.steps = parse_i64(key, value, line_no);
    if (cfg.steps < 0) range_fail(key, "must be >= 0");
  } else {
    parse_fail(line_no, "unknown key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError(IoErrc::open_failed, "cannot open config: " + path);
  RunConfig cfg = default_config();
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    apply_config_line(cfg, line, line_no);
  }
  cfg.hp.validate();
  return cfg;
}

}  // namespace ktm
