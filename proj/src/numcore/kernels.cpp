#include "ktm/numcore/kernels.hpp"

#include <atomic>

#include "kernels_impl.hpp"

namespace ktm::kernels {

namespace {

std::atomic<Backend> g_backend{
#ifdef _OPENMP
    Backend::openmp
#else
    Backend::serial
#endif
};

bool same_shape(const std::vector<DenseLayer>& a, const std::vector<DenseLayer>& b) {
  if (a.size() != b.size()) return false;
  for (size_t l = 0; l < a.size(); ++l) {
    if (a[l].w.rows != b[l].w.rows || a[l].w.cols != b[l].w.cols ||
        a[l].b.size() != b[l].b.size()) {
      return false;
    }
  }
  return true;
}

void prepare_ws(const MlpParams& p, const Mat& x, Workspace& ws) {
  const int L = int(p.layers.size());
  ws.acts.resize(L + 1);
  if (ws.acts[0].rows != x.rows || ws.acts[0].cols != x.cols) ws.acts[0].resize(x.rows, x.cols);
  ws.acts[0].data = x.data;
  for (int l = 0; l < L; ++l) {
    const int w = p.layers[l].w.rows;
    if (ws.acts[l + 1].rows != x.rows || ws.acts[l + 1].cols != w) {
      ws.acts[l + 1].resize(x.rows, w);
    }
  }
}

}  // namespace

Backend default_backend() { return g_backend.load(std::memory_order_relaxed); }
void set_default_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }

void forward_batch(const MlpParams& p, const Mat& x, Workspace& ws, Backend backend) {
  KTM_REQUIRE(!p.layers.empty(), "forward_batch: empty network");
  KTM_REQUIRE(x.cols == p.input_dim(), "forward_batch: input dimension mismatch");
  for (size_t l = 0; l + 1 < p.layers.size(); ++l) {
    KTM_REQUIRE(p.layers[l].w.rows == p.layers[l + 1].w.cols,
                "forward_batch: inconsistent layer dimensions");
  }
  for (double v : x.data) KTM_REQUIRE(std::isfinite(v), "forward_batch: non-finite input");
  prepare_ws(p, x, ws);
  if (backend == Backend::openmp) {
    omp_impl::forward(p, ws);
  } else {
    serial_impl::forward(p, ws);
  }
}

void backward_batch(const MlpParams& p, Workspace& ws, const Mat& dy, MlpGrads* grads, Mat* dx,
                    Backend backend) {
  KTM_REQUIRE(ws.acts.size() == p.layers.size() + 1,
              "backward_batch: workspace does not match network");
  KTM_REQUIRE(dy.rows == ws.acts[0].rows && dy.cols == p.output_dim(),
              "backward_batch: output-gradient shape mismatch");
  if (grads) {
    KTM_REQUIRE(same_shape(grads->layers, p.layers), "backward_batch: gradient shape mismatch");
  }
  if (backend == Backend::openmp) {
    omp_impl::backward(p, ws, dy, grads, dx);
  } else {
    serial_impl::backward(p, ws, dy, grads, dx);
  }
}

void adam_step(AdamState& st, MlpParams& p, const MlpGrads& g, Backend backend) {
  KTM_REQUIRE(same_shape(st.m.layers, p.layers) && same_shape(g.layers, p.layers),
              "adam_step: shape mismatch");
  st.step += 1;
  if (backend == Backend::openmp) {
    omp_impl::adam(st, p, g);
  } else {
    serial_impl::adam(st, p, g);
  }
}

void polyak_update(MlpParams& target, const MlpParams& online, double tau, Backend backend) {
  KTM_REQUIRE(same_shape(target.layers, online.layers), "polyak_update: shape mismatch");
  KTM_REQUIRE(tau > 0.0 && tau <= 1.0, "polyak_update: tau must be in (0, 1]");
  if (backend == Backend::openmp) {
    omp_impl::polyak(target, online, tau);
  } else {
    serial_impl::polyak(target, online, tau);
  }
}

}  // namespace ktm::kernels
