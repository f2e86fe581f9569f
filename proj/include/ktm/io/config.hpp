#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "ktm/agents/hyperparams.hpp"

namespace ktm {

// Parsed `key = value` configuration plus the run plan mirrored by CLI flags
// (flags win over file values).
struct RunConfig {
  Hyperparams hp;

  std::vector<int> teacher_hidden{400, 400};
  std::vector<int> student_hidden{400, 400};
  int64_t buffer_capacity = 1000000;
  int warmup_steps = 1000;
  int64_t teacher_steps = 0;  // 0 = per-task defaults
  int64_t collect_steps = 20000;
  int eval_episodes = 10;
  int64_t eval_interval = 1000;
  bool task_onehot = false;
  int jobs = 1;

  // plan fields (mirrored by flags)
  uint64_t seed = 1;
  std::string out = "runs/default";
  std::string tasks;  // CSV of task names; empty = all
  std::string mode = "full";
  bool overwrite = false;
  int64_t steps = 0;  // 0 = no override
};

// 30k steps for pendulum/reacher2, 20k for the pointmass variants.
int64_t default_teacher_steps(int task_id);

RunConfig default_config();
// Line-based `key = value` grammar, `#` comments. Unknown keys are rejected
// with their line number; out-of-range values name the key.
RunConfig parse_config(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& line, int line_no);

const std::vector<std::string>& valid_modes();

}  // namespace ktm
