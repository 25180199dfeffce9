#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace ffrl {

// Generalized advantage estimation over a time-major rollout:
// arrays index (t, e) as t * n_envs + e.
//
//   delta_t = r_t + gamma * V(s_{t+1}) * (1 - done_t) - V(s_t)
//   A_t     = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
//
// V(s_horizon) comes from `bootstrap` (one entry per env); returns are
// advantages + values.
struct GaeResult {
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
};

GaeResult compute_gae(const Eigen::VectorXd& rewards,
                      const Eigen::VectorXd& values,
                      const std::vector<std::uint8_t>& dones,
                      const Eigen::VectorXd& bootstrap, int n_envs,
                      int horizon, double gamma, double lambda);

}  // namespace ffrl
