#include "ktm/numcore/mlp.hpp"

#include <cmath>

#include "ktm/numcore/kernels.hpp"

namespace ktm {

size_t MlpParams::param_count() const {
  size_t n = 0;
  for (const auto& l : layers) n += l.w.data.size() + l.b.size();
  return n;
}

void MlpGrads::zero() {
  for (auto& l : layers) {
    l.w.zero();
    std::fill(l.b.begin(), l.b.end(), 0.0);
  }
}

MlpParams make_mlp(int in_dim, std::span<const int> hidden, int out_dim, OutAct out_act,
                   double bound, Rng& rng) {
  KTM_REQUIRE(in_dim >= 1 && out_dim >= 1, "make_mlp: dimensions must be >= 1");
  KTM_REQUIRE(out_act != OutAct::tanh_bounded || bound > 0.0, "make_mlp: bound must be > 0");
  MlpParams p;
  p.out_act = out_act;
  p.bound = bound;
  int prev = in_dim;
  auto add_layer = [&](int out) {
    DenseLayer ly;
    ly.w.resize(out, prev);
    ly.b.assign(out, 0.0);
    const double lim = 1.0 / std::sqrt(double(prev));
    for (int o = 0; o < out; ++o) {
      for (int i = 0; i < prev; ++i) ly.w.at(o, i) = rng.uniform(-lim, lim);
    }
    for (int o = 0; o < out; ++o) ly.b[o] = rng.uniform(-lim, lim);
    p.layers.push_back(std::move(ly));
    prev = out;
  };
  for (int h : hidden) {
    KTM_REQUIRE(h >= 1, "make_mlp: hidden width must be >= 1");
    add_layer(h);
  }
  add_layer(out_dim);
  return p;
}

MlpGrads zero_grads(const MlpParams& p) {
  MlpGrads g;
  g.layers.reserve(p.layers.size());
  for (const auto& l : p.layers) {
    DenseLayer gl;
    gl.w.resize(l.w.rows, l.w.cols);
    gl.b.assign(l.b.size(), 0.0);
    g.layers.push_back(std::move(gl));
  }
  return g;
}

namespace {
thread_local kernels::Workspace tl_ws;
}

std::vector<double> forward(const MlpParams& p, std::span<const double> input) {
  KTM_REQUIRE(int(input.size()) == p.input_dim(), "forward: input dimension mismatch");
  Mat x(1, int(input.size()));
  std::copy(input.begin(), input.end(), x.data.begin());
  kernels::forward_batch(p, x, tl_ws, kernels::Backend::serial);
  const Mat& y = tl_ws.output();
  return {y.data.begin(), y.data.end()};
}

BackwardResult backward(const MlpParams& p, std::span<const double> input,
                        std::span<const double> out_grad) {
  KTM_REQUIRE(int(input.size()) == p.input_dim(), "backward: input dimension mismatch");
  KTM_REQUIRE(int(out_grad.size()) == p.output_dim(), "backward: output-grad dimension mismatch");
  Mat x(1, int(input.size()));
  std::copy(input.begin(), input.end(), x.data.begin());
  kernels::forward_batch(p, x, tl_ws, kernels::Backend::serial);
  Mat dy(1, int(out_grad.size()));
  std::copy(out_grad.begin(), out_grad.end(), dy.data.begin());
  BackwardResult r;
  r.grads = zero_grads(p);
  Mat dx;
  kernels::backward_batch(p, tl_ws, dy, &r.grads, &dx, kernels::Backend::serial);
  r.input_grad.assign(dx.data.begin(), dx.data.end());
  return r;
}

std::vector<double> flatten(const MlpParams& p) {
  std::vector<double> out;
  out.reserve(p.param_count());
  for (const auto& l : p.layers) {
    out.insert(out.end(), l.w.data.begin(), l.w.data.end());
    out.insert(out.end(), l.b.begin(), l.b.end());
  }
  return out;
}

void unflatten(MlpParams& p, std::span<const double> flat) {
  KTM_REQUIRE(flat.size() == p.param_count(), "unflatten: payload size mismatch");
  size_t k = 0;
  for (auto& l : p.layers) {
    std::copy(flat.begin() + k, flat.begin() + k + l.w.data.size(), l.w.data.begin());
    k += l.w.data.size();
    std::copy(flat.begin() + k, flat.begin() + k + l.b.size(), l.b.begin());
    k += l.b.size();
  }
}

uint64_t params_checksum(const MlpParams& p) {
  uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](const double* d, size_t n) {
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(d);
    for (size_t i = 0; i < n * sizeof(double); ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& l : p.layers) {
    feed(l.w.data.data(), l.w.data.size());
    feed(l.b.data(), l.b.size());
  }
  return h;
}

}  // namespace ktm
