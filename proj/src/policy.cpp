#include "ffrl/policy.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace ffrl {

namespace {
constexpr double kLn2Pi = 1.8378770664093454835606594728112;
constexpr std::size_t kMaxPolicyBytes = 1048576;
constexpr char kMagic[4] = {'F', 'F', 'R', 'L'};
constexpr std::uint16_t kFormatVersion = 1;
}  // namespace

PolicyParams PolicyParams::init(std::uint64_t seed) {
  PolicyParams p;
  RngStream actor_rng(derive_seed(seed, 101, 0));
  RngStream critic_rng(derive_seed(seed, 102, 0));
  // Small output gain keeps initial wrench commands near zero.
  p.actor = Mlp::orthogonal_init(kObsDim, kHiddenDim, kActDim, 0.01, actor_rng);
  p.critic = Mlp::orthogonal_init(kObsDim, kHiddenDim, 1, 1.0, critic_rng);
  p.log_std.fill(0.0f);
  return p;
}

Vec6 actor_forward(const PolicyParams& p, const Observation& obs) {
  MatX x = obs.as_vector().transpose();
  return p.actor.forward(x).row(0).transpose();
}

double critic_forward(const PolicyParams& p, const Observation& obs) {
  MatX x = obs.as_vector().transpose();
  return p.critic.forward(x)(0, 0);
}

Vec6 sample_action(const Vec6& mean, const Vec6& log_std, RngStream& rng,
                   double* log_prob) {
  Vec6 action;
  for (int i = 0; i < kActDim; ++i) {
    action[i] = mean[i] + std::exp(log_std[i]) * rng.normal();
  }
  if (log_prob != nullptr) {
    *log_prob = gaussian_log_prob(mean, log_std, action);
  }
  return action;
}

double gaussian_log_prob(const Vec6& mean, const Vec6& log_std,
                         const Vec6& action) {
  double lp = 0.0;
  for (int i = 0; i < kActDim; ++i) {
    const double z = (action[i] - mean[i]) * std::exp(-log_std[i]);
    lp += -0.5 * z * z - log_std[i] - 0.5 * kLn2Pi;
  }
  return lp;
}

double gaussian_entropy(const Vec6& log_std) {
  return log_std.sum() + 0.5 * kActDim * (1.0 + kLn2Pi);
}

GaussianGrads gaussian_log_prob_grads(const Vec6& mean, const Vec6& log_std,
                                      const Vec6& action) {
  GaussianGrads g;
  for (int i = 0; i < kActDim; ++i) {
    const double inv_var = std::exp(-2.0 * log_std[i]);
    const double diff = action[i] - mean[i];
    g.d_mean[i] = diff * inv_var;
    g.d_log_std[i] = diff * diff * inv_var - 1.0;
  }
  return g;
}

// --- serialization ---

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  }
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

void put_tensor(std::vector<std::uint8_t>& out, const std::vector<float>& data,
                std::uint32_t rows, std::uint32_t cols) {
  if (cols == 0) {
    out.push_back(1);  // rank
    put_u32(out, rows);
  } else {
    out.push_back(2);
    put_u32(out, rows);
    put_u32(out, cols);
  }
  for (float v : data) put_f32(out, v);
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }

  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_]) |
                      static_cast<std::uint16_t>(bytes_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  float f32() {
    const std::uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }

  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) {
    if (pos_ + n > bytes_.size()) {
      throw PolicyIoError(PolicyIoErrorKind::kTruncated, pos_,
                          "policy file truncated");
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

void read_tensor(Reader& r, std::vector<float>& dst, std::uint32_t rows,
                 std::uint32_t cols, const char* name) {
  const std::size_t header_at = r.offset();
  const std::uint8_t rank = r.u8();
  const std::uint8_t want_rank = cols == 0 ? 1 : 2;
  if (rank != want_rank) {
    throw PolicyIoError(PolicyIoErrorKind::kShapeMismatch, header_at,
                        std::string("tensor ") + name + ": unexpected rank " +
                            std::to_string(rank));
  }
  const std::uint32_t got_rows = r.u32();
  const std::uint32_t got_cols = cols == 0 ? 0 : r.u32();
  if (got_rows != rows || got_cols != cols) {
    throw PolicyIoError(PolicyIoErrorKind::kShapeMismatch, header_at,
                        std::string("tensor ") + name + ": unexpected shape");
  }
  const std::size_t count = cols == 0 ? rows : std::size_t(rows) * cols;
  dst.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t at = r.offset();
    const float v = r.f32();
    if (!std::isfinite(v)) {
      throw PolicyIoError(PolicyIoErrorKind::kBadValue, at,
                          std::string("tensor ") + name + ": non-finite value");
    }
    dst[i] = v;
  }
}

void append_mlp(std::vector<std::uint8_t>& out, const Mlp& net) {
  for (int t = 0; t < 6; ++t) {
    const auto [rows, cols] = net.tensor_shape(t);
    put_tensor(out, net.tensors()[t], static_cast<std::uint32_t>(rows),
               static_cast<std::uint32_t>(cols));
  }
}

void read_mlp(Reader& r, Mlp& net, const char* which) {
  static const char* names[6] = {"W1", "b1", "W2", "b2", "W3", "b3"};
  for (int t = 0; t < 6; ++t) {
    const auto [rows, cols] = net.tensor_shape(t);
    std::string label = std::string(which) + "." + names[t];
    read_tensor(r, net.tensors()[t], static_cast<std::uint32_t>(rows),
                static_cast<std::uint32_t>(cols), label.c_str());
  }
  net.sync();
}

}  // namespace

std::vector<std::uint8_t> serialize_policy(const PolicyParams& params,
                                           bool actor_only) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, kFormatVersion);
  put_u16(out, actor_only ? 7 : 13);
  append_mlp(out, params.actor);
  if (!actor_only) append_mlp(out, params.critic);
  std::vector<float> ls(params.log_std.begin(), params.log_std.end());
  put_tensor(out, ls, kActDim, 0);
  if (out.size() >= kMaxPolicyBytes) {
    throw PolicyIoError(PolicyIoErrorKind::kBadValue, out.size(),
                        "serialized policy exceeds the 1 MiB budget");
  }
  return out;
}

PolicyParams deserialize_policy(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  for (char expected : kMagic) {
    const std::size_t at = r.offset();
    if (static_cast<char>(r.u8()) != expected) {
      throw PolicyIoError(PolicyIoErrorKind::kBadMagic, at,
                          "not a policy file (bad magic)");
    }
  }
  {
    const std::size_t at = r.offset();
    const std::uint16_t version = r.u16();
    if (version != kFormatVersion) {
      throw PolicyIoError(PolicyIoErrorKind::kBadVersion, at,
                          "unsupported policy format version " +
                              std::to_string(version));
    }
  }
  const std::size_t count_at = r.offset();
  const std::uint16_t n_tensors = r.u16();
  if (n_tensors != 13 && n_tensors != 7) {
    throw PolicyIoError(PolicyIoErrorKind::kShapeMismatch, count_at,
                        "expected 13 or 7 tensors, found " +
                            std::to_string(n_tensors));
  }

  PolicyParams params;
  read_mlp(r, params.actor, "actor");
  params.has_critic = n_tensors == 13;
  if (params.has_critic) {
    read_mlp(r, params.critic, "critic");
  }
  std::vector<float> ls;
  read_tensor(r, ls, kActDim, 0, "log_std");
  for (int i = 0; i < kActDim; ++i) params.log_std[i] = ls[i];
  if (!r.at_end()) {
    throw PolicyIoError(PolicyIoErrorKind::kShapeMismatch, r.offset(),
                        "trailing bytes after the last tensor");
  }
  return params;
}

void save_policy(const std::string& path, const PolicyParams& params,
                 bool actor_only) {
  const std::vector<std::uint8_t> bytes = serialize_policy(params, actor_only);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("short write to " + path);
  }
}

PolicyParams load_policy(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  return deserialize_policy(bytes);
}

}  // namespace ffrl
