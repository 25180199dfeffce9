#pragma once

#include <cstdint>

#include "ffrl/rng.hpp"
#include "ffrl/sixdof.hpp"

namespace ffrl {

struct GoalPose {
  Vec3 position = Vec3(0.5, 0.5, 0.0);
  Quat attitude = Quat::identity();
};

// Policy input: 13 scalars, ordered lin_vel, ang_vel, pos_error, quat_error.
struct Observation {
  static constexpr int kDim = 13;

  Vec3 lin_vel = Vec3::Zero();
  Vec3 ang_vel = Vec3::Zero();
  Vec3 pos_error = Vec3::Zero();  // goal - current, world frame
  Quat quat_error = Quat::identity();

  Eigen::Matrix<double, kDim, 1> as_vector() const {
    Eigen::Matrix<double, kDim, 1> v;
    v << lin_vel, ang_vel, pos_error, quat_error.w, quat_error.a,
        quat_error.b, quat_error.c;
    return v;
  }

  bool is_finite() const { return as_vector().allFinite(); }
};

struct RewardConfig {
  double pos_goal_theta = 0.1;                  // m
  double ori_goal_theta = 0.3490658503988659;   // rad (20 deg)
  double pos_scale = 1.0;
  double ori_scale = 1.0;
  double lin_vel_penalty = 0.1;
  double ang_vel_penalty = 0.1;
};

// How goal poses are drawn at reset.
//   kAxisRange: position = baseline + per-axis uniform(-R, +R);
//               attitude  = normalize(1, u, u, u) with u ~ uniform(-R, +R).
//   kBall:      position = initial pose + uniform point in a ball of radius
//               pos R; attitude components u ~ uniform(0, +R).
enum class GoalSampling { kAxisRange, kBall };

struct EnvConfig {
  double dt = defaults::kDt;
  int episode_len = 1000;
  double f_max = defaults::kForceMax;
  double tau_max = defaults::kTorqueMax;
  double base_mass = defaults::kBaseMass;
  double pos_var_r = 0.0;
  double ori_var_r = 0.0;
  double mass_var_r = 0.0;
  std::uint64_t seed = 0;
  Vec3 goal_pos = Vec3(0.5, 0.5, 0.0);
  Quat goal_att = Quat::identity();
  double cube_side = defaults::kCubeSide;
  double min_mass = defaults::kMinMass;
  bool body_frame_force = false;
  GoalSampling goal_sampling = GoalSampling::kAxisRange;
};

// --- reward terms ---

// (1 - tanh(error / goal_theta)) * scale, evaluated as 2/(1 + e^(2u)) so the
// result stays strictly positive far into the tanh saturation region.
double shaped_reward(double error, double goal_theta, double scale);

// -lin_vel_penalty * |v|^2 - ang_vel_penalty * |w|^2
double velocity_penalty(const Vec3& lin_vel, const Vec3& ang_vel,
                        const RewardConfig& cfg);

Observation build_observation(const BodyState& state, const GoalPose& goal);

// Sum of the shaped position term, shaped orientation term, and the velocity
// penalty; nothing else.
double total_reward(const BodyState& state, const GoalPose& goal,
                    const RewardConfig& cfg);

// Draw (initial state, goal, mass) for one episode. The body always starts
// at the origin, identity attitude, at rest. Exactly seven uniform draws are
// consumed regardless of the ranges, so streams stay aligned when ranges
// change between episodes.
struct ResetSample {
  BodyState state;
  GoalPose goal;
  MassProps props;
};
ResetSample env_reset(const EnvConfig& cfg, RngStream& rng);

// One free-flyer episode instance. Does not auto-reset at the step cap (the
// caller decides); a non-finite action fails the episode and resets
// immediately.
class ZeroGEnv {
 public:
  struct StepResult {
    Observation obs;       // after the step (post-reset when failed)
    double reward = 0.0;   // reward of the post-step state (0 when failed)
    bool done = false;
    bool failed = false;
  };

  ZeroGEnv(const EnvConfig& cfg, const RewardConfig& reward_cfg,
           std::uint64_t stream_seed);

  // Override the randomization ranges used by subsequent resets (curriculum
  // hook). Sampling mode follows the config unless overridden here.
  void set_ranges(double pos_r, double ori_r, double mass_r);
  void set_ranges(double pos_r, double ori_r, double mass_r,
                  GoalSampling sampling);

  Observation reset();
  StepResult step(const Vec6& action);

  const BodyState& state() const { return state_; }
  const GoalPose& goal() const { return goal_; }
  const MassProps& props() const { return props_; }
  const EnvConfig& config() const { return cfg_; }
  const RewardConfig& reward_config() const { return reward_cfg_; }
  int step_count() const { return step_count_; }
  bool done() const { return step_count_ >= cfg_.episode_len; }
  Observation observation() const { return build_observation(state_, goal_); }

 private:
  EnvConfig cfg_;
  RewardConfig reward_cfg_;
  RngStream rng_;
  BodyState state_;
  GoalPose goal_;
  MassProps props_;
  int step_count_ = 0;
};

}  // namespace ffrl
