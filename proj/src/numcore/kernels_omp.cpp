// OpenMP kernels. Same per-element workers as the serial reference; threads
// split whole rows/units, so results match the serial backend bitwise.
#include "kernels_detail.hpp"
#include "kernels_impl.hpp"

namespace ktm::kernels::omp_impl {

void forward(const MlpParams& p, Workspace& ws) {
  const int n_rows = ws.acts[0].rows;
  for (int l = 0; l < int(p.layers.size()); ++l) {
    const Mat& in = ws.acts[l];
    Mat& out = ws.acts[l + 1];
#pragma omp parallel for schedule(static)
    for (int n = 0; n < n_rows; ++n) {
      detail::forward_row(p, l, in, out, n);
    }
  }
}

void backward(const MlpParams& p, Workspace& ws, const Mat& dy, MlpGrads* grads, Mat* dx) {
  const int L = int(p.layers.size());
  const int N = dy.rows;

  Mat* delta = &ws.delta_a;
  Mat* delta_prev = &ws.delta_b;
  delta->resize(N, p.output_dim());
#pragma omp parallel for schedule(static)
  for (int n = 0; n < N; ++n) detail::out_delta_row(p, ws.acts[L], dy, *delta, n);

  for (int l = L - 1; l >= 0; --l) {
    if (grads) {
      DenseLayer& g = grads->layers[l];
      const Mat& d = *delta;
      const Mat& a_in = ws.acts[l];
#pragma omp parallel for schedule(static)
      for (int o = 0; o < g.w.rows; ++o) detail::grad_unit(d, a_in, g, o);
    }
    if (l > 0) {
      delta_prev->resize(N, p.layers[l].w.cols);
      const Mat& d = *delta;
      Mat& dp = *delta_prev;
#pragma omp parallel for schedule(static)
      for (int n = 0; n < N; ++n) {
        detail::backprop_delta_row(p.layers[l], d, ws.acts[l], dp, n, true);
      }
      std::swap(delta, delta_prev);
    } else if (dx) {
      dx->resize(N, p.layers[0].w.cols);
      const Mat& d = *delta;
#pragma omp parallel for schedule(static)
      for (int n = 0; n < N; ++n) {
        detail::backprop_delta_row(p.layers[0], d, ws.acts[0], *dx, n, false);
      }
    }
  }
}

void adam(AdamState& st, MlpParams& p, const MlpGrads& g) {
  const double bc1 = 1.0 / (1.0 - std::pow(st.beta1, double(st.step)));
  const double bc2 = 1.0 / (1.0 - std::pow(st.beta2, double(st.step)));
  for (size_t l = 0; l < p.layers.size(); ++l) {
    DenseLayer& ly = p.layers[l];
    const DenseLayer& gl = g.layers[l];
    DenseLayer& ml = st.m.layers[l];
    DenseLayer& vl = st.v.layers[l];
    const int nw = int(ly.w.data.size());
    // chunked so each element is updated by exactly one thread
    constexpr int chunk = 4096;
#pragma omp parallel for schedule(static)
    for (int c = 0; c < (nw + chunk - 1) / chunk; ++c) {
      const int i0 = c * chunk;
      const int n = std::min(chunk, nw - i0);
      detail::adam_range(ly.w.data.data() + i0, gl.w.data.data() + i0, ml.w.data.data() + i0,
                         vl.w.data.data() + i0, n, st.beta1, st.beta2, st.eps, st.lr, bc1, bc2);
    }
    detail::adam_range(ly.b.data(), gl.b.data(), ml.b.data(), vl.b.data(), int(ly.b.size()),
                       st.beta1, st.beta2, st.eps, st.lr, bc1, bc2);
  }
}

void polyak(MlpParams& target, const MlpParams& online, double tau) {
  for (size_t l = 0; l < target.layers.size(); ++l) {
    double* t = target.layers[l].w.data.data();
    const double* o = online.layers[l].w.data.data();
    const int nw = int(target.layers[l].w.data.size());
    constexpr int chunk = 4096;
#pragma omp parallel for schedule(static)
    for (int c = 0; c < (nw + chunk - 1) / chunk; ++c) {
      const int i0 = c * chunk;
      detail::polyak_range(t + i0, o + i0, std::min(chunk, nw - i0), tau);
    }
    detail::polyak_range(target.layers[l].b.data(), online.layers[l].b.data(),
                         int(target.layers[l].b.size()), tau);
  }
}

}  // namespace ktm::kernels::omp_impl
