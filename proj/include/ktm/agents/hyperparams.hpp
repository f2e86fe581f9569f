#pragma once
#include <cstdint>

#include "ktm/common.hpp"

namespace ktm {

// Scalar knobs of the two-stage training algorithm.
struct Hyperparams {
  double gamma = 0.99;
  double tau = 0.005;
  double explore_sigma = 0.1;
  double target_noise_sigma = 0.2;
  double noise_clip = 0.5;
  int policy_delay = 2;
  int batch = 256;
  double lr = 3e-4;
  double alpha = 1.0;  // teacher-term weight in the combined actor gradient
  double beta = 1.0;   // own-critic-term weight
  int64_t t_off = 20000;
  int64_t t_on = 30000;

  void validate() const {
    KTM_REQUIRE(gamma > 0.0 && gamma <= 1.0, "hyperparams: gamma must be in (0, 1]");
    KTM_REQUIRE(tau > 0.0 && tau <= 1.0, "hyperparams: tau must be in (0, 1]");
    KTM_REQUIRE(explore_sigma >= 0.0, "hyperparams: explore_sigma must be >= 0");
    KTM_REQUIRE(target_noise_sigma >= 0.0, "hyperparams: target_noise_sigma must be >= 0");
    KTM_REQUIRE(noise_clip >= 0.0, "hyperparams: noise_clip must be >= 0");
    KTM_REQUIRE(policy_delay >= 1, "hyperparams: policy_delay must be >= 1");
    KTM_REQUIRE(batch >= 1, "hyperparams: batch must be >= 1");
    KTM_REQUIRE(lr > 0.0, "hyperparams: lr must be > 0");
    KTM_REQUIRE(alpha >= 0.0 && beta >= 0.0, "hyperparams: alpha and beta must be >= 0");
    KTM_REQUIRE(t_off >= 0 && t_on >= 0, "hyperparams: epoch budgets must be >= 0");
  }
};

}  // namespace ktm
