#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffrl/env.hpp"
#include "ffrl/mlp.hpp"

namespace ffrl {

inline constexpr int kObsDim = Observation::kDim;  // 13
inline constexpr int kActDim = 6;
inline constexpr int kHiddenDim = 64;
inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

// Actor-critic parameter set: two same-architecture perceptrons plus a
// state-independent action log standard deviation.
struct PolicyParams {
  Mlp actor{kObsDim, kHiddenDim, kActDim};
  Mlp critic{kObsDim, kHiddenDim, 1};
  std::array<float, kActDim> log_std{};  // master storage, like Mlp tensors
  bool has_critic = true;

  static PolicyParams init(std::uint64_t seed);

  Eigen::Matrix<double, kActDim, 1> log_std_vec() const {
    Eigen::Matrix<double, kActDim, 1> v;
    for (int i = 0; i < kActDim; ++i) v[i] = static_cast<double>(log_std[i]);
    return v;
  }

  void clamp_log_std() {
    for (float& v : log_std) {
      v = std::min(std::max(v, static_cast<float>(kLogStdMin)),
                   static_cast<float>(kLogStdMax));
    }
  }
};

// --- actor / critic evaluation ---

// Batched actor mean: obs [n x 13] -> mean [n x 6].
inline MatX actor_forward(const PolicyParams& p,
                          const Eigen::Ref<const MatX>& obs) {
  return p.actor.forward(obs);
}

Vec6 actor_forward(const PolicyParams& p, const Observation& obs);

// Batched critic value: obs [n x 13] -> [n].
inline VecX critic_forward(const PolicyParams& p,
                           const Eigen::Ref<const MatX>& obs) {
  return p.critic.forward(obs).col(0);
}

double critic_forward(const PolicyParams& p, const Observation& obs);

// --- diagonal Gaussian head ---

// Draw action ~ N(mean, diag(exp(log_std))^2); log_prob is the exact density
// of the returned sample.
Vec6 sample_action(const Vec6& mean, const Vec6& log_std, RngStream& rng,
                   double* log_prob);

double gaussian_log_prob(const Vec6& mean, const Vec6& log_std,
                         const Vec6& action);

// Entropy of the diagonal Gaussian: sum_i (log_std_i + 0.5 ln(2 pi e)).
double gaussian_entropy(const Vec6& log_std);

struct GaussianGrads {
  Vec6 d_mean;     // d log_prob / d mean
  Vec6 d_log_std;  // d log_prob / d log_std
};
GaussianGrads gaussian_log_prob_grads(const Vec6& mean, const Vec6& log_std,
                                      const Vec6& action);

// --- binary policy file ---
//
// Layout (little-endian): magic "FFRL", u16 format version (1), u16 tensor
// count, then per tensor: u8 rank, u32 dims[rank], f32 data row-major.
// Tensor order: actor W1,b1,W2,b2,W3,b3 [, critic W1,b1,W2,b2,W3,b3],
// log_std. 13 tensors for a full checkpoint, 7 for an actor-only export.

enum class PolicyIoErrorKind {
  kBadMagic,
  kBadVersion,
  kShapeMismatch,
  kTruncated,
  kBadValue,
};

class PolicyIoError : public std::runtime_error {
 public:
  PolicyIoError(PolicyIoErrorKind kind, std::size_t offset,
                const std::string& what)
      : std::runtime_error(what + " (at byte offset " +
                           std::to_string(offset) + ")"),
        kind_(kind),
        offset_(offset) {}

  PolicyIoErrorKind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  PolicyIoErrorKind kind_;
  std::size_t offset_;
};

// Serialize; asserts the result stays under 1 MiB. actor_only drops the
// critic for deployment.
std::vector<std::uint8_t> serialize_policy(const PolicyParams& params,
                                           bool actor_only = false);
PolicyParams deserialize_policy(const std::vector<std::uint8_t>& bytes);

void save_policy(const std::string& path, const PolicyParams& params,
                 bool actor_only = false);
PolicyParams load_policy(const std::string& path);

}  // namespace ffrl
