#include "ktm/numcore/adam.hpp"

namespace ktm {

AdamState make_adam(const MlpParams& p, double lr) {
  KTM_REQUIRE(lr > 0.0, "make_adam: lr must be > 0");
  AdamState st;
  st.m = zero_grads(p);
  st.v = zero_grads(p);
  st.lr = lr;
  return st;
}

}  // namespace ktm
