#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "ktm/agents/hyperparams.hpp"
#include "ktm/agents/triple.hpp"
#include "ktm/envs/env.hpp"

namespace ktm {

enum class CheckpointRole : uint32_t { teacher = 0, student = 1 };

struct Provenance {
  std::string stage;   // "teacher" | "offline" | "online" | "init"
  int64_t epochs = 0;  // steps or epochs completed in that stage
  uint64_t seed = 0;
};

// Versioned binary artifact (magic "KTMC"). Parameter payloads are
// little-endian 64-bit floats in layer order; round-trips are bit-exact.
struct Checkpoint {
  uint32_t version = 1;
  CheckpointRole role = CheckpointRole::teacher;
  int32_t task_id = -1;  // teachers only; -1 for the student
  uint64_t suite_fingerprint = 0;
  Hyperparams hp;
  DnnTriple online;
  DnnTriple target;
  TripleAdam adam;
  Provenance prov;
};

uint64_t suite_fingerprint(const std::vector<TaskSpec>& suite);

void save_checkpoint(const std::string& path, const Checkpoint& c);
// Validates magic, version and suite fingerprint; never returns partial state.
Checkpoint load_checkpoint(const std::string& path, uint64_t expected_fingerprint);
Checkpoint load_checkpoint(const std::string& path, uint64_t expected_fingerprint,
                           CheckpointRole expected_role);

}  // namespace ktm
