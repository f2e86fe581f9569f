// Serial reference kernels. Kept deliberately free of threading so the OpenMP
// variants can be checked against them bitwise.
#include "kernels_detail.hpp"
#include "kernels_impl.hpp"

namespace ktm::kernels::serial_impl {

void forward(const MlpParams& p, Workspace& ws) {
  const int n_rows = ws.acts[0].rows;
  for (int l = 0; l < int(p.layers.size()); ++l) {
    for (int n = 0; n < n_rows; ++n) {
      detail::forward_row(p, l, ws.acts[l], ws.acts[l + 1], n);
    }
  }
}

void backward(const MlpParams& p, Workspace& ws, const Mat& dy, MlpGrads* grads, Mat* dx) {
  const int L = int(p.layers.size());
  const int N = dy.rows;

  Mat* delta = &ws.delta_a;
  Mat* delta_prev = &ws.delta_b;
  delta->resize(N, p.output_dim());
  for (int n = 0; n < N; ++n) detail::out_delta_row(p, ws.acts[L], dy, *delta, n);

  for (int l = L - 1; l >= 0; --l) {
    if (grads) {
      DenseLayer& g = grads->layers[l];
      for (int o = 0; o < g.w.rows; ++o) detail::grad_unit(*delta, ws.acts[l], g, o);
    }
    if (l > 0) {
      delta_prev->resize(N, p.layers[l].w.cols);
      for (int n = 0; n < N; ++n) {
        detail::backprop_delta_row(p.layers[l], *delta, ws.acts[l], *delta_prev, n, true);
      }
      std::swap(delta, delta_prev);
    } else if (dx) {
      dx->resize(N, p.layers[0].w.cols);
      for (int n = 0; n < N; ++n) {
        detail::backprop_delta_row(p.layers[0], *delta, ws.acts[0], *dx, n, false);
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
    detail::adam_range(ly.w.data.data(), gl.w.data.data(), ml.w.data.data(), vl.w.data.data(),
                       int(ly.w.data.size()), st.beta1, st.beta2, st.eps, st.lr, bc1, bc2);
    detail::adam_range(ly.b.data(), gl.b.data(), ml.b.data(), vl.b.data(), int(ly.b.size()),
                       st.beta1, st.beta2, st.eps, st.lr, bc1, bc2);
  }
}

void polyak(MlpParams& target, const MlpParams& online, double tau) {
  for (size_t l = 0; l < target.layers.size(); ++l) {
    detail::polyak_range(target.layers[l].w.data.data(), online.layers[l].w.data.data(),
                         int(target.layers[l].w.data.size()), tau);
    detail::polyak_range(target.layers[l].b.data(), online.layers[l].b.data(),
                         int(target.layers[l].b.size()), tau);
  }
}

}  // namespace ktm::kernels::serial_impl
