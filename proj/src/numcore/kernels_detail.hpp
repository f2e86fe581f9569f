#pragma once
#include <algorithm>
#include <cmath>

#include "ktm/numcore/kernels.hpp"

// Per-element workers shared by the serial and OpenMP backends. Every output
// element is produced by exactly one call with a fixed accumulation order, so
// the two backends agree bitwise for any thread count.
namespace ktm::kernels::detail {

// Fixed 4-accumulator dot product.
inline double dot(const double* a, const double* b, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return ((s0 + s1) + (s2 + s3)) + tail;
}

inline void axpy(double* y, double a, const double* x, int n) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

// One sample through layer l. Hidden layers are ReLU; the last layer applies
// the configured head.
inline void forward_row(const MlpParams& p, int l, const Mat& in, Mat& out, int n) {
  const DenseLayer& ly = p.layers[l];
  const double* xin = in.row(n);
  double* y = out.row(n);
  const bool last = (l + 1 == int(p.layers.size()));
  for (int o = 0; o < ly.w.rows; ++o) {
    double z = dot(ly.w.row(o), xin, ly.w.cols) + ly.b[o];
    if (!last) {
      y[o] = z > 0.0 ? z : 0.0;
    } else if (p.out_act == OutAct::tanh_bounded) {
      y[o] = p.bound * std::tanh(z);
    } else {
      y[o] = z;
    }
  }
}

// Output-layer delta: dy ⊙ act'(z), recovered from the activation itself.
inline void out_delta_row(const MlpParams& p, const Mat& a_out, const Mat& dy, Mat& delta,
                          int n) {
  const double* yr = a_out.row(n);
  const double* dr = dy.row(n);
  double* dl = delta.row(n);
  if (p.out_act == OutAct::tanh_bounded) {
    // y = B*tanh(z)  =>  dy/dz = B - y^2/B
    for (int o = 0; o < a_out.cols; ++o) dl[o] = dr[o] * (p.bound - yr[o] * yr[o] / p.bound);
  } else {
    for (int o = 0; o < a_out.cols; ++o) dl[o] = dr[o];
  }
}

// delta_prev[n] = (delta[n] . W_l), masked by relu'(a_in[n]) for hidden layers.
// ReLU subgradient at 0 is 0 (a_in == 0 masks the entry).
inline void backprop_delta_row(const DenseLayer& ly, const Mat& delta, const Mat& a_in,
                               Mat& delta_prev, int n, bool mask_relu) {
  const double* dl = delta.row(n);
  double* dp = delta_prev.row(n);
  std::fill(dp, dp + ly.w.cols, 0.0);
  for (int o = 0; o < ly.w.rows; ++o) {
    if (dl[o] != 0.0) axpy(dp, dl[o], ly.w.row(o), ly.w.cols);
  }
  if (mask_relu) {
    const double* ai = a_in.row(n);
    for (int i = 0; i < ly.w.cols; ++i) {
      if (ai[i] <= 0.0) dp[i] = 0.0;
    }
  }
}

// Weight and bias gradient of one output unit, summed over the batch in sample
// order.
inline void grad_unit(const Mat& delta, const Mat& a_in, DenseLayer& g, int o) {
  double* gw = g.w.row(o);
  std::fill(gw, gw + g.w.cols, 0.0);
  double gb = 0.0;
  for (int n = 0; n < delta.rows; ++n) {
    const double d = delta.at(n, o);
    gb += d;
    if (d != 0.0) axpy(gw, d, a_in.row(n), g.w.cols);
  }
  g.b[o] = gb;
}

inline void adam_range(double* p, const double* g, double* m, double* v, int n, double b1,
                       double b2, double eps, double lr, double bc1, double bc2) {
  for (int i = 0; i < n; ++i) {
    m[i] = b1 * m[i] + (1.0 - b1) * g[i];
    v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
    const double mhat = m[i] * bc1;
    const double vhat = v[i] * bc2;
    p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

inline void polyak_range(double* t, const double* o, int n, double tau) {
  for (int i = 0; i < n; ++i) t[i] = tau * o[i] + (1.0 - tau) * t[i];
}

}  // namespace ktm::kernels::detail
