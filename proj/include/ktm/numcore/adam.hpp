#pragma once
#include <cstdint>

#include "ktm/numcore/mlp.hpp"

namespace ktm {

// Bias-corrected Adam. Moment tensors mirror the tracked parameter shapes.
struct AdamState {
  MlpGrads m, v;
  int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double lr = 3e-4;
};

AdamState make_adam(const MlpParams& p, double lr);

}  // namespace ktm
