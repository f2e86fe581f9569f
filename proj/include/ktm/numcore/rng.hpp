#pragma once
#include <cmath>
#include <cstdint>
#include <numbers>

#include "ktm/common.hpp"

namespace ktm {

// splitmix64 stream. State is a single 64-bit counter, so identical seeds give
// identical draw sequences on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [0, n), Lemire multiply-shift
  int uniform_int(int n) {
    KTM_REQUIRE(n > 0, "uniform_int: n must be positive");
    return int((unsigned __int128)next_u64() * (unsigned)n >> 64);
  }

  // N(0, sigma^2) via Box-Muller. sigma == 0 returns 0 without consuming draws.
  double gaussian(double sigma) {
    KTM_REQUIRE(sigma >= 0.0, "gaussian: sigma must be >= 0");
    if (sigma == 0.0) return 0.0;
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

// Deterministic derivation of independent-looking sub-streams from one seed.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  Rng r(a ^ (b * 0x9E3779B97F4A7C15ull) ^ 0xD1B54A32D192ED03ull);
  return r.next_u64();
}

inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) { return mix_seed(mix_seed(a, b), c); }

}  // namespace ktm
