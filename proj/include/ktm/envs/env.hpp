#pragma once
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ktm/common.hpp"
#include "ktm/numcore/rng.hpp"

namespace ktm {

struct TaskSpec {
  int task_id = 0;
  std::string name;
  int state_dim = 0;
  int action_dim = 0;
  double action_bound = 0.0;  // symmetric per-component bound
  int max_episode_steps = 0;
};

struct StepResult {
  std::vector<double> next_state;
  double reward = 0.0;
  bool done = false;
};

// Deterministic fixed-horizon task. Actions are clipped componentwise to the
// bound before the dynamics; episodes end only at max_episode_steps.
class Env {
 public:
  explicit Env(TaskSpec spec) : spec_(std::move(spec)) {}
  virtual ~Env() = default;

  const TaskSpec& spec() const { return spec_; }

  std::vector<double> reset(uint64_t seed);
  StepResult step(std::span<const double> action);

  int steps_taken() const { return steps_; }

 protected:
  virtual std::vector<double> reset_state(Rng& rng) = 0;
  // u is the clipped action; returns the observation and reward of the step.
  virtual std::pair<std::vector<double>, double> integrate(const std::vector<double>& u) = 0;

 private:
  TaskSpec spec_;
  int steps_ = 0;
  bool live_ = false;
};

// The fixed 5-task suite, in task_id order.
const std::vector<TaskSpec>& task_suite();
std::unique_ptr<Env> make_env(int task_id);
std::unique_ptr<Env> make_env(const std::string& name);
int task_id_by_name(const std::string& name);  // -1 if unknown

int max_state_dim(const std::vector<TaskSpec>& suite);
int max_action_dim(const std::vector<TaskSpec>& suite);
double max_action_bound(const std::vector<TaskSpec>& suite);

}  // namespace ktm
