#include "ktm/replay/replay.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace ktm {

namespace {

constexpr char kMagic[4] = {'K', 'T', 'M', 'B'};
constexpr uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "buffer files are little-endian; big-endian hosts are unsupported");

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is, const std::string& path) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError(IoErrc::truncated, "truncated buffer file: " + path);
  return v;
}

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) KTM_REQUIRE(std::isfinite(x), std::string("push: non-finite ") + what);
}

}  // namespace

HierarchicalReplay::HierarchicalReplay(std::vector<TaskSpec> specs, size_t capacity)
    : specs_(std::move(specs)), capacity_(capacity) {
  KTM_REQUIRE(!specs_.empty(), "replay: need at least one task");
  KTM_REQUIRE(capacity_ >= 1, "replay: capacity must be >= 1");
  subs_.resize(specs_.size());
}

const TaskSpec& HierarchicalReplay::spec(int task_id) const {
  KTM_REQUIRE(task_id >= 0 && task_id < num_tasks(), "replay: task id out of range");
  return specs_[task_id];
}

const HierarchicalReplay::SubBuffer& HierarchicalReplay::sub(int task_id) const {
  KTM_REQUIRE(task_id >= 0 && task_id < num_tasks(), "replay: task id out of range");
  return subs_[task_id];
}

HierarchicalReplay::SubBuffer& HierarchicalReplay::sub(int task_id) {
  KTM_REQUIRE(task_id >= 0 && task_id < num_tasks(), "replay: task id out of range");
  return subs_[task_id];
}

void HierarchicalReplay::push(int task_id, Transition t) {
  const TaskSpec& s = spec(task_id);
  KTM_REQUIRE(int(t.state.size()) == s.state_dim && int(t.next_state.size()) == s.state_dim,
              "push: state dimension mismatch");
  KTM_REQUIRE(int(t.action.size()) == s.action_dim, "push: action dimension mismatch");
  check_finite(t.state, "state");
  check_finite(t.action, "action");
  check_finite(t.next_state, "next_state");
  KTM_REQUIRE(std::isfinite(t.reward), "push: non-finite reward");

  SubBuffer& b = sub(task_id);
  if (b.items.size() < capacity_) {
    b.items.push_back(std::move(t));
  } else {
    b.items[b.head] = std::move(t);
    b.head = (b.head + 1) % capacity_;
  }
  b.pushes += 1;
}

size_t HierarchicalReplay::size(int task_id) const { return sub(task_id).items.size(); }

const Transition& HierarchicalReplay::at(int task_id, size_t i) const {
  const SubBuffer& b = sub(task_id);
  KTM_REQUIRE(i < b.items.size(), "at: index out of range");
  return b.items[(b.head + i) % b.items.size()];
}

std::vector<Transition> HierarchicalReplay::sample(int task_id, int n, Rng& rng) const {
  const SubBuffer& b = sub(task_id);
  KTM_REQUIRE(n >= 1, "sample: n must be >= 1");
  if (b.items.empty()) {
    throw ContractError("sample: sub-buffer for task " + std::to_string(task_id) +
                        " is empty; warm it up first");
  }
  std::vector<Transition> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(b.items[rng.uniform_int(int(b.items.size()))]);
  b.samples += 1;
  return out;
}

uint64_t HierarchicalReplay::push_count(int task_id) const { return sub(task_id).pushes; }
uint64_t HierarchicalReplay::sample_count(int task_id) const { return sub(task_id).samples; }

void HierarchicalReplay::clear(int task_id) {
  SubBuffer& b = sub(task_id);
  b.items.clear();
  b.head = 0;
  b.pushes = 0;
  b.samples = 0;
}

void HierarchicalReplay::save_task(const std::string& path, int task_id) const {
  const TaskSpec& s = spec(task_id);
  const SubBuffer& b = sub(task_id);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(IoErrc::open_failed, "cannot open for write: " + path);
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, uint32_t(task_id));
  put(os, uint32_t(s.state_dim));
  put(os, uint32_t(s.action_dim));
  put(os, uint64_t(b.items.size()));
  for (size_t i = 0; i < b.items.size(); ++i) {
    const Transition& t = at(task_id, i);  // oldest first
    os.write(reinterpret_cast<const char*>(t.state.data()), s.state_dim * sizeof(double));
    os.write(reinterpret_cast<const char*>(t.action.data()), s.action_dim * sizeof(double));
    put(os, t.reward);
    os.write(reinterpret_cast<const char*>(t.next_state.data()), s.state_dim * sizeof(double));
    const uint8_t done = t.done ? 1 : 0;
    put(os, done);
  }
  os.flush();
  if (!os) throw IoError(IoErrc::open_failed, "write failed: " + path);
}

void HierarchicalReplay::load_task(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError(IoErrc::open_failed, "cannot open: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError(IoErrc::bad_magic, "not a buffer file: " + path);
  }
  const auto version = get<uint32_t>(is, path);
  if (version != kVersion) {
    throw IoError(IoErrc::bad_version,
                  "unsupported buffer version " + std::to_string(version) + ": " + path);
  }
  const auto task_id = get<uint32_t>(is, path);
  if (task_id >= uint32_t(num_tasks())) {
    throw IoError(IoErrc::parse, "buffer task id out of range: " + path);
  }
  const TaskSpec& s = specs_[task_id];
  const auto state_dim = get<uint32_t>(is, path);
  const auto action_dim = get<uint32_t>(is, path);
  if (int(state_dim) != s.state_dim || int(action_dim) != s.action_dim) {
    throw IoError(IoErrc::parse, "buffer dimensions do not match task spec: " + path);
  }
  const auto count = get<uint64_t>(is, path);
  if (count > capacity_) {
    throw IoError(IoErrc::parse, "buffer record count exceeds capacity: " + path);
  }

  std::vector<Transition> items;
  items.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    Transition t;
    t.state.resize(state_dim);
    t.action.resize(action_dim);
    t.next_state.resize(state_dim);
    is.read(reinterpret_cast<char*>(t.state.data()), state_dim * sizeof(double));
    is.read(reinterpret_cast<char*>(t.action.data()), action_dim * sizeof(double));
    t.reward = get<double>(is, path);
    is.read(reinterpret_cast<char*>(t.next_state.data()), state_dim * sizeof(double));
    if (!is) throw IoError(IoErrc::truncated, "truncated buffer file: " + path);
    t.done = get<uint8_t>(is, path) != 0;
    items.push_back(std::move(t));
  }

  SubBuffer& b = subs_[task_id];
  b.items = std::move(items);
  b.head = 0;
  b.pushes = b.items.size();
  b.samples = 0;
}

}  // namespace ktm
