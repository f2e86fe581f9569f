#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "ktm/common.hpp"
#include "ktm/numcore/rng.hpp"

namespace ktm {

// Row-major dense matrix.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), data(size_t(r) * size_t(c), 0.0) {}

  void resize(int r, int c) {
    rows = r;
    cols = c;
    data.assign(size_t(r) * size_t(c), 0.0);
  }
  void zero() { std::fill(data.begin(), data.end(), 0.0); }

  double* row(int r) { return data.data() + size_t(r) * cols; }
  const double* row(int r) const { return data.data() + size_t(r) * cols; }
  double& at(int r, int c) { return data[size_t(r) * cols + c]; }
  double at(int r, int c) const { return data[size_t(r) * cols + c]; }
};

enum class OutAct { linear, tanh_bounded };

struct DenseLayer {
  Mat w;                   // [out x in]
  std::vector<double> b;   // [out]
};

// Feed-forward net with ReLU hidden layers and a linear or bound*tanh head.
struct MlpParams {
  std::vector<DenseLayer> layers;
  OutAct out_act = OutAct::linear;
  double bound = 1.0;  // tanh scale, used when out_act == tanh_bounded

  int input_dim() const { return layers.front().w.cols; }
  int output_dim() const { return layers.back().w.rows; }
  size_t param_count() const;
};

// Same shapes as the MlpParams they are taken against.
struct MlpGrads {
  std::vector<DenseLayer> layers;
  void zero();
};

// Weights and biases uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] per layer.
MlpParams make_mlp(int in_dim, std::span<const int> hidden, int out_dim, OutAct out_act,
                   double bound, Rng& rng);

MlpGrads zero_grads(const MlpParams& p);

std::vector<double> forward(const MlpParams& p, std::span<const double> input);

// Exact reverse-mode gradients of <output, out_grad> w.r.t. parameters and the
// input. ReLU subgradient at 0 is 0.
struct BackwardResult {
  MlpGrads grads;
  std::vector<double> input_grad;
};
BackwardResult backward(const MlpParams& p, std::span<const double> input,
                        std::span<const double> out_grad);

// Parameter payload in layer order: layer 0 weights row-major, layer 0 bias,
// layer 1 weights, ... The same order is used by checkpoints.
std::vector<double> flatten(const MlpParams& p);
void unflatten(MlpParams& p, std::span<const double> flat);

// FNV-1a over the flattened payload bytes.
uint64_t params_checksum(const MlpParams& p);

}  // namespace ktm
