#pragma once
#include <span>

#include "ktm/numcore/adam.hpp"
#include "ktm/numcore/mlp.hpp"
#include "ktm/numcore/rng.hpp"

namespace ktm {

// Actor plus twin critics. Critics score concat(state, action) with a linear
// scalar head; the actor output is tanh scaled by the action bound.
struct DnnTriple {
  MlpParams actor;
  MlpParams critic1;
  MlpParams critic2;
};

struct TripleAdam {
  AdamState actor;
  AdamState critic1;
  AdamState critic2;
};

DnnTriple make_triple(int state_dim, int action_dim, double action_bound,
                      std::span<const int> hidden, Rng& rng);
TripleAdam make_triple_adam(const DnnTriple& t, double lr);

uint64_t triple_checksum(const DnnTriple& t);

}  // namespace ktm
