#pragma once
#include "ktm/numcore/kernels.hpp"

namespace ktm::kernels {

namespace serial_impl {
void forward(const MlpParams& p, Workspace& ws);
void backward(const MlpParams& p, Workspace& ws, const Mat& dy, MlpGrads* grads, Mat* dx);
void adam(AdamState& st, MlpParams& p, const MlpGrads& g);
void polyak(MlpParams& target, const MlpParams& online, double tau);
}  // namespace serial_impl

namespace omp_impl {
void forward(const MlpParams& p, Workspace& ws);
void backward(const MlpParams& p, Workspace& ws, const Mat& dy, MlpGrads* grads, Mat* dx);
void adam(AdamState& st, MlpParams& p, const MlpGrads& g);
void polyak(MlpParams& target, const MlpParams& online, double tau);
}  // namespace omp_impl

}  // namespace ktm::kernels
