#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "ktm/envs/env.hpp"
#include "ktm/numcore/rng.hpp"

namespace ktm {

// One environment interaction, stored unpadded in native task dimensions.
struct Transition {
  std::vector<double> state;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_state;
  bool done = false;
};

// K independent bounded FIFO sub-buffers, one per task, sampled per task
// uniformly with replacement. Single-writer, single-reader; no locking.
class HierarchicalReplay {
 public:
  explicit HierarchicalReplay(std::vector<TaskSpec> specs, size_t capacity = 1000000);

  int num_tasks() const { return int(specs_.size()); }
  size_t capacity() const { return capacity_; }
  const TaskSpec& spec(int task_id) const;

  void push(int task_id, Transition t);
  std::vector<Transition> sample(int task_id, int n, Rng& rng) const;

  size_t size(int task_id) const;
  // i = 0 is the oldest retained transition
  const Transition& at(int task_id, size_t i) const;

  uint64_t push_count(int task_id) const;    // total insertions, including evicted
  uint64_t sample_count(int task_id) const;  // total sample() calls served

  void clear(int task_id);

  // Versioned binary sub-buffer file (magic "KTMB"); bit-exact round-trip.
  void save_task(const std::string& path, int task_id) const;
  // Replaces the sub-buffer named in the file header.
  void load_task(const std::string& path);

 private:
  struct SubBuffer {
    std::vector<Transition> items;  // ring, head_ = next write slot once full
    size_t head = 0;
    uint64_t pushes = 0;
    mutable uint64_t samples = 0;
  };

  const SubBuffer& sub(int task_id) const;
  SubBuffer& sub(int task_id);

  std::vector<TaskSpec> specs_;
  size_t capacity_;
  std::vector<SubBuffer> subs_;
};

}  // namespace ktm
