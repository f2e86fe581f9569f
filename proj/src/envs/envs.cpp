#include "ktm/envs/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ktm {

namespace {

constexpr double kDt = 0.05;
constexpr int kHorizon = 200;

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// wrap to [-pi, pi)
double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(a + std::numbers::pi, two_pi);
  if (y < 0) y += two_pi;
  return y - std::numbers::pi;
}

// Torque-limited swing-up. State (theta, omega), observed as
// (cos theta, sin theta, omega).
class PendulumEnv final : public Env {
 public:
  explicit PendulumEnv(TaskSpec spec) : Env(std::move(spec)) {}

 protected:
  std::vector<double> reset_state(Rng& rng) override {
    theta_ = rng.uniform(-std::numbers::pi, std::numbers::pi);
    omega_ = rng.uniform(-1.0, 1.0);
    return obs();
  }

  std::pair<std::vector<double>, double> integrate(const std::vector<double>& u) override {
    constexpr double g = 10.0, m = 1.0, l = 1.0;
    const double torque = u[0];
    omega_ = clip(omega_ + kDt * ((3.0 * g / (2.0 * l)) * std::sin(theta_) +
                                  (3.0 / (m * l * l)) * torque),
                  -8.0, 8.0);
    theta_ = wrap_angle(theta_ + kDt * omega_);
    const double reward =
        -(theta_ * theta_ + 0.1 * omega_ * omega_ + 0.001 * torque * torque);
    return {obs(), reward};
  }

 private:
  std::vector<double> obs() const { return {std::cos(theta_), std::sin(theta_), omega_}; }
  double theta_ = 0, omega_ = 0;
};

// Planar point mass pushed toward a fixed target, with mass and linear drag
// picked per variant. State (x, y, vx, vy).
class PointMassEnv final : public Env {
 public:
  PointMassEnv(TaskSpec spec, double mass, double drag)
      : Env(std::move(spec)), mass_(mass), drag_(drag) {}

 protected:
  std::vector<double> reset_state(Rng& rng) override {
    p_[0] = rng.uniform(-1.0, 1.0);
    p_[1] = rng.uniform(-1.0, 1.0);
    v_[0] = v_[1] = 0.0;
    return obs();
  }

  std::pair<std::vector<double>, double> integrate(const std::vector<double>& u) override {
    for (int i = 0; i < 2; ++i) {
      v_[i] = v_[i] + kDt * (u[i] / mass_ - drag_ * v_[i]);
      p_[i] = clip(p_[i] + kDt * v_[i], -2.0, 2.0);
    }
    const double dx = p_[0] - 1.0, dy = p_[1] - 1.0;
    const double reward =
        -std::sqrt(dx * dx + dy * dy) - 0.01 * (u[0] * u[0] + u[1] * u[1]);
    return {obs(), reward};
  }

 private:
  std::vector<double> obs() const { return {p_[0], p_[1], v_[0], v_[1]}; }
  double mass_, drag_;
  double p_[2] = {0, 0}, v_[2] = {0, 0};
};

// Two-joint velocity-damped reacher with a fixed target. Joint state
// (q1, q2, dq1, dq2), observed as (cos q1, sin q1, cos q2, sin q2, dq1, dq2,
// tx, ty).
class ReacherEnv final : public Env {
 public:
  explicit ReacherEnv(TaskSpec spec) : Env(std::move(spec)) {}

 protected:
  std::vector<double> reset_state(Rng& rng) override {
    q_[0] = rng.uniform(-0.1, 0.1);
    q_[1] = rng.uniform(-0.1, 0.1);
    dq_[0] = dq_[1] = 0.0;
    return obs();
  }

  std::pair<std::vector<double>, double> integrate(const std::vector<double>& u) override {
    for (int i = 0; i < 2; ++i) {
      dq_[i] = clip(dq_[i] + kDt * (u[i] - 0.1 * dq_[i]), -4.0, 4.0);
      q_[i] = q_[i] + kDt * dq_[i];  // unwrapped
    }
    const double tipx = std::cos(q_[0]) + std::cos(q_[0] + q_[1]);
    const double tipy = std::sin(q_[0]) + std::sin(q_[0] + q_[1]);
    const double ex = tipx - kTargetX, ey = tipy - kTargetY;
    const double reward =
        -std::sqrt(ex * ex + ey * ey) - 0.01 * (u[0] * u[0] + u[1] * u[1]);
    return {obs(), reward};
  }

 private:
  static constexpr double kTargetX = 0.5, kTargetY = 1.0;
  std::vector<double> obs() const {
    return {std::cos(q_[0]), std::sin(q_[0]), std::cos(q_[1]), std::sin(q_[1]),
            dq_[0],          dq_[1],          kTargetX,        kTargetY};
  }
  double q_[2] = {0, 0}, dq_[2] = {0, 0};
};

}  // namespace

std::vector<double> Env::reset(uint64_t seed) {
  Rng rng(seed);
  steps_ = 0;
  live_ = true;
  std::vector<double> o = reset_state(rng);
  KTM_REQUIRE(int(o.size()) == spec_.state_dim, "reset: observation dimension mismatch");
  return o;
}

StepResult Env::step(std::span<const double> action) {
  KTM_REQUIRE(live_, "step: reset the environment first");
  KTM_REQUIRE(steps_ < spec_.max_episode_steps, "step: episode is already done");
  KTM_REQUIRE(int(action.size()) == spec_.action_dim, "step: action dimension mismatch");
  std::vector<double> u(action.size());
  for (size_t i = 0; i < action.size(); ++i) {
    KTM_REQUIRE(std::isfinite(action[i]), "step: non-finite action");
    u[i] = clip(action[i], -spec_.action_bound, spec_.action_bound);
  }
  auto [next, reward] = integrate(u);
  steps_ += 1;
  StepResult r;
  r.next_state = std::move(next);
  r.reward = reward;
  r.done = (steps_ >= spec_.max_episode_steps);
  return r;
}

const std::vector<TaskSpec>& task_suite() {
  static const std::vector<TaskSpec> suite = {
      {0, "pendulum", 3, 1, 2.0, kHorizon},
      {1, "pointmass-light", 4, 2, 1.0, kHorizon},
      {2, "pointmass-heavy", 4, 2, 1.0, kHorizon},
      {3, "pointmass-drag", 4, 2, 1.0, kHorizon},
      {4, "reacher2", 8, 2, 1.0, kHorizon},
  };
  return suite;
}

std::unique_ptr<Env> make_env(int task_id) {
  const auto& suite = task_suite();
  KTM_REQUIRE(task_id >= 0 && task_id < int(suite.size()), "make_env: unknown task id");
  const TaskSpec& s = suite[task_id];
  switch (task_id) {
    case 0: return std::make_unique<PendulumEnv>(s);
    case 1: return std::make_unique<PointMassEnv>(s, 0.5, 0.1);
    case 2: return std::make_unique<PointMassEnv>(s, 2.0, 0.1);
    case 3: return std::make_unique<PointMassEnv>(s, 1.0, 1.0);
    default: return std::make_unique<ReacherEnv>(s);
  }
}

int task_id_by_name(const std::string& name) {
  for (const auto& s : task_suite()) {
    if (s.name == name) return s.task_id;
  }
  return -1;
}

std::unique_ptr<Env> make_env(const std::string& name) {
  const int id = task_id_by_name(name);
  KTM_REQUIRE(id >= 0, "make_env: unknown task name '" + name + "'");
  return make_env(id);
}

int max_state_dim(const std::vector<TaskSpec>& suite) {
  int m = 0;
  for (const auto& s : suite) m = std::max(m, s.state_dim);
  return m;
}

int max_action_dim(const std::vector<TaskSpec>& suite) {
  int m = 0;
  for (const auto& s : suite) m = std::max(m, s.action_dim);
  return m;
}

double max_action_bound(const std::vector<TaskSpec>& suite) {
  double m = 0;
  for (const auto& s : suite) m = std::max(m, s.action_bound);
  return m;
}

}  // namespace ktm
