#include "ktm/io/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace ktm {

namespace {

constexpr char kMagic[4] = {'K', 'T', 'M', 'C'};
constexpr uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoints are little-endian; big-endian hosts are unsupported");

struct Reader {
  std::ifstream is;
  std::string path;

  template <typename T>
  T get() {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError(IoErrc::truncated, "truncated checkpoint: " + path);
    return v;
  }
  void get_doubles(double* d, size_t n) {
    is.read(reinterpret_cast<char*>(d), n * sizeof(double));
    if (!is) throw IoError(IoErrc::truncated, "truncated checkpoint: " + path);
  }
  std::string get_string() {
    const auto n = get<uint32_t>();
    if (n > 4096) throw IoError(IoErrc::parse, "oversized string field: " + path);
    std::string s(n, '\0');
    is.read(s.data(), n);
    if (!is) throw IoError(IoErrc::truncated, "truncated checkpoint: " + path);
    return s;
  }
};

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

void put_string(std::ostream& os, const std::string& s) {
  put(os, uint32_t(s.size()));
  os.write(s.data(), std::streamsize(s.size()));
}

void put_layers(std::ostream& os, const std::vector<DenseLayer>& layers) {
  put(os, uint32_t(layers.size()));
  for (const auto& l : layers) {
    put(os, uint32_t(l.w.rows));
    put(os, uint32_t(l.w.cols));
    os.write(reinterpret_cast<const char*>(l.w.data.data()),
             std::streamsize(l.w.data.size() * sizeof(double)));
    os.write(reinterpret_cast<const char*>(l.b.data()),
             std::streamsize(l.b.size() * sizeof(double)));
  }
}

std::vector<DenseLayer> get_layers(Reader& r) {
  const auto n = r.get<uint32_t>();
  if (n == 0 || n > 64) throw IoError(IoErrc::parse, "bad layer count: " + r.path);
  std::vector<DenseLayer> layers(n);
  for (auto& l : layers) {
    const auto rows = r.get<uint32_t>();
    const auto cols = r.get<uint32_t>();
    if (rows == 0 || cols == 0 || rows > (1u << 20) || cols > (1u << 20)) {
      throw IoError(IoErrc::parse, "bad layer shape: " + r.path);
    }
    l.w.resize(int(rows), int(cols));
    l.b.assign(rows, 0.0);
    r.get_doubles(l.w.data.data(), l.w.data.size());
    r.get_doubles(l.b.data(), l.b.size());
  }
  return layers;
}

void put_mlp(std::ostream& os, const MlpParams& p) {
  put(os, uint32_t(p.out_act == OutAct::tanh_bounded ? 1 : 0));
  put(os, p.bound);
  put_layers(os, p.layers);
}

MlpParams get_mlp(Reader& r) {
  MlpParams p;
  p.out_act = r.get<uint32_t>() == 1 ? OutAct::tanh_bounded : OutAct::linear;
  p.bound = r.get<double>();
  p.layers = get_layers(r);
  return p;
}

void put_triple(std::ostream& os, const DnnTriple& t) {
  put_mlp(os, t.actor);
  put_mlp(os, t.critic1);
  put_mlp(os, t.critic2);
}

DnnTriple get_triple(Reader& r) {
  DnnTriple t;
  t.actor = get_mlp(r);
  t.critic1 = get_mlp(r);
  t.critic2 = get_mlp(r);
  return t;
}

void put_adam(std::ostream& os, const AdamState& a) {
  put(os, int64_t(a.step));
  put(os, a.beta1);
  put(os, a.beta2);
  put(os, a.eps);
  put(os, a.lr);
  put_layers(os, a.m.layers);
  put_layers(os, a.v.layers);
}

AdamState get_adam(Reader& r) {
  AdamState a;
  a.step = r.get<int64_t>();
  a.beta1 = r.get<double>();
  a.beta2 = r.get<double>();
  a.eps = r.get<double>();
  a.lr = r.get<double>();
  a.m.layers = get_layers(r);
  a.v.layers = get_layers(r);
  return a;
}

void put_hp(std::ostream& os, const Hyperparams& hp) {
  put(os, hp.gamma);
  put(os, hp.tau);
  put(os, hp.explore_sigma);
  put(os, hp.target_noise_sigma);
  put(os, hp.noise_clip);
  put(os, int64_t(hp.policy_delay));
  put(os, int64_t(hp.batch));
  put(os, hp.lr);
  put(os, hp.alpha);
  put(os, hp.beta);
  put(os, hp.t_off);
  put(os, hp.t_on);
}

Hyperparams get_hp(Reader& r) {
  Hyperparams hp;
  hp.gamma = r.get<double>();
  hp.tau = r.get<double>();
  hp.explore_sigma = r.get<double>();
  hp.target_noise_sigma = r.get<double>();
  hp.noise_clip = r.get<double>();
  hp.policy_delay = int(r.get<int64_t>());
  hp.batch = int(r.get<int64_t>());
  hp.lr = r.get<double>();
  hp.alpha = r.get<double>();
  hp.beta = r.get<double>();
  hp.t_off = r.get<int64_t>();
  hp.t_on = r.get<int64_t>();
  return hp;
}

}  // namespace

uint64_t suite_fingerprint(const std::vector<TaskSpec>& suite) {
  uint64_t h = 0xcbf29ce484222325ull;
  auto feed_bytes = [&](const void* p, size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& s : suite) {
    feed_bytes(s.name.data(), s.name.size());
    const int64_t ints[4] = {s.task_id, s.state_dim, s.action_dim, s.max_episode_steps};
    feed_bytes(ints, sizeof(ints));
    feed_bytes(&s.action_bound, sizeof(double));
  }
  return h;
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(IoErrc::open_failed, "cannot open for write: " + path);
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, uint32_t(c.role));
  put(os, c.task_id);
  put(os, c.suite_fingerprint);
  put_hp(os, c.hp);
  put_triple(os, c.online);
  put_triple(os, c.target);
  put_adam(os, c.adam.actor);
  put_adam(os, c.adam.critic1);
  put_adam(os, c.adam.critic2);
  put_string(os, c.prov.stage);
  put(os, c.prov.epochs);
  put(os, c.prov.seed);
  os.flush();
  if (!os) throw IoError(IoErrc::open_failed, "write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path, uint64_t expected_fingerprint) {
  Reader r;
  r.path = path;
  r.is.open(path, std::ios::binary);
  if (!r.is) throw IoError(IoErrc::open_failed, "cannot open: " + path);
  char magic[4];
  r.is.read(magic, 4);
  if (!r.is || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError(IoErrc::bad_magic, "not a checkpoint file: " + path);
  }
  const auto version = r.get<uint32_t>();
  if (version != kVersion) {
    throw IoError(IoErrc::bad_version,
                  "unsupported checkpoint version " + std::to_string(version) + ": " + path);
  }
  Checkpoint c;
  c.version = version;
  const auto role = r.get<uint32_t>();
  if (role > 1) throw IoError(IoErrc::parse, "bad role tag: " + path);
  c.role = CheckpointRole(role);
  c.task_id = r.get<int32_t>();
  c.suite_fingerprint = r.get<uint64_t>();
  if (c.suite_fingerprint != expected_fingerprint) {
    throw IoError(IoErrc::bad_fingerprint,
                  "checkpoint was written for a different task suite: " + path);
  }
  c.hp = get_hp(r);
  c.online = get_triple(r);
  c.target = get_triple(r);
  c.adam.actor = get_adam(r);
  c.adam.critic1 = get_adam(r);
  c.adam.critic2 = get_adam(r);
  c.prov.stage = r.get_string();
  c.prov.epochs = r.get<int64_t>();
  c.prov.seed = r.get<uint64_t>();
  return c;
}

Checkpoint load_checkpoint(const std::string& path, uint64_t expected_fingerprint,
                           CheckpointRole expected_role) {
  Checkpoint c = load_checkpoint(path, expected_fingerprint);
  if (c.role != expected_role) {
    throw IoError(IoErrc::bad_role, std::string("checkpoint role is ") +
                                        (c.role == CheckpointRole::teacher ? "teacher" : "student") +
                                        ", expected " +
                                        (expected_role == CheckpointRole::teacher ? "teacher"
                                                                                  : "student") +
                                        ": " + path);
  }
  return c;
}

}  // namespace ktm
