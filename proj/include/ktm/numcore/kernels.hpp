#pragma once
#include "ktm/numcore/adam.hpp"
#include "ktm/numcore/mlp.hpp"

// Batched kernels in two variants: a serial reference and an OpenMP version.
// Both compute every output element with identical per-element operation order,
// so results are bitwise equal between backends and across thread counts.
namespace ktm::kernels {

enum class Backend { serial, openmp };

Backend default_backend();
void set_default_backend(Backend b);

struct Workspace {
  std::vector<Mat> acts;  // acts[0] = input, acts[l+1] = output of layer l
  Mat delta_a, delta_b;   // backprop scratch

  const Mat& output() const { return acts.back(); }
};

void forward_batch(const MlpParams& p, const Mat& x, Workspace& ws,
                   Backend backend = default_backend());

// ws must hold activations of a forward_batch over the same params and input.
// dy is [N x out_dim], already scaled by the caller (e.g. by 1/N). Either of
// grads / dx may be null; grads are overwritten, not accumulated.
void backward_batch(const MlpParams& p, const Workspace& ws, const Mat& dy, MlpGrads* grads,
                    Mat* dx, Backend backend = default_backend());

void adam_step(AdamState& st, MlpParams& p, const MlpGrads& g,
               Backend backend = default_backend());

// target <- tau * online + (1 - tau) * target, elementwise
void polyak_update(MlpParams& target, const MlpParams& online, double tau,
                   Backend backend = default_backend());

}  // namespace ktm::kernels
