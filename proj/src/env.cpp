#include "ffrl/env.hpp"

#include <cmath>
#include <stdexcept>

namespace ffrl {

double shaped_reward(double error, double goal_theta, double scale) {
  // 1 - tanh(u) == 2 / (1 + exp(2u))
  const double u = error / goal_theta;
  return scale * 2.0 / (1.0 + std::exp(2.0 * u));
}

double velocity_penalty(const Vec3& lin_vel, const Vec3& ang_vel,
                        const RewardConfig& cfg) {
  return -cfg.lin_vel_penalty * lin_vel.squaredNorm() -
         cfg.ang_vel_penalty * ang_vel.squaredNorm();
}

Observation build_observation(const BodyState& state, const GoalPose& goal) {
  Observation obs;
  obs.lin_vel = state.lin_vel;
  obs.ang_vel = state.ang_vel;
  obs.pos_error = goal.position - state.position;
  obs.quat_error = quat_error(state.attitude, goal.attitude);
  return obs;
}

double total_reward(const BodyState& state, const GoalPose& goal,
                    const RewardConfig& cfg) {
  const double pos_err = (goal.position - state.position).norm();
  const double ori_err = quat_angle(quat_error(state.attitude, goal.attitude));
  return shaped_reward(pos_err, cfg.pos_goal_theta, cfg.pos_scale) +
         shaped_reward(ori_err, cfg.ori_goal_theta, cfg.ori_scale) +
         velocity_penalty(state.lin_vel, state.ang_vel, cfg);
}

ResetSample env_reset(const EnvConfig& cfg, RngStream& rng) {
  ResetSample out;
  out.state = BodyState{};  // origin, identity, at rest

  // Fixed draw order: three position values, three orientation values, one
  // mass value.
  double pd[3], od[3];
  for (double& v : pd) v = rng.uniform01();
  for (double& v : od) v = rng.uniform01();
  const double md = rng.uniform01();

  auto symmetric = [](double u, double r) { return r * (2.0 * u - 1.0); };

  if (cfg.goal_sampling == GoalSampling::kAxisRange) {
    out.goal.position =
        cfg.goal_pos + Vec3(symmetric(pd[0], cfg.pos_var_r),
                            symmetric(pd[1], cfg.pos_var_r),
                            symmetric(pd[2], cfg.pos_var_r));
    out.goal.attitude = Quat{cfg.goal_att.w,
                             cfg.goal_att.a + symmetric(od[0], cfg.ori_var_r),
                             cfg.goal_att.b + symmetric(od[1], cfg.ori_var_r),
                             cfg.goal_att.c + symmetric(od[2], cfg.ori_var_r)}
                            .normalized();
  } else {
    // Uniform point in the ball of radius pos_var_r around the start pose:
    // direction from the first two draws (via inverse transform on the
    // sphere), radius from the cube root of the third.
    const double z = 2.0 * pd[0] - 1.0;
    const double phi = 2.0 * 3.141592653589793238462643383279502884 * pd[1];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 dir(s * std::cos(phi), s * std::sin(phi), z);
    const double radius = cfg.pos_var_r * std::cbrt(pd[2]);
    out.goal.position = out.state.position + radius * dir;
    out.goal.attitude = Quat{1.0, cfg.ori_var_r * od[0],
                             cfg.ori_var_r * od[1], cfg.ori_var_r * od[2]}
                            .normalized();
  }

  const double mass = std::max(
      cfg.min_mass, cfg.base_mass + symmetric(md, cfg.mass_var_r));
  out.props = cube_mass_props(mass, cfg.cube_side);
  return out;
}

ZeroGEnv::ZeroGEnv(const EnvConfig& cfg, const RewardConfig& reward_cfg,
                   std::uint64_t stream_seed)
    : cfg_(cfg), reward_cfg_(reward_cfg), rng_(stream_seed) {
  if (cfg.episode_len <= 0) {
    throw std::invalid_argument("ZeroGEnv: episode_len must be > 0");
  }
  if (cfg.pos_var_r < 0.0 || cfg.ori_var_r < 0.0 || cfg.mass_var_r < 0.0) {
    throw std::invalid_argument("ZeroGEnv: randomization ranges must be >= 0");
  }
  reset();
}

void ZeroGEnv::set_ranges(double pos_r, double ori_r, double mass_r) {
  set_ranges(pos_r, ori_r, mass_r, cfg_.goal_sampling);
}

void ZeroGEnv::set_ranges(double pos_r, double ori_r, double mass_r,
                          GoalSampling sampling) {
  cfg_.pos_var_r = pos_r;
  cfg_.ori_var_r = ori_r;
  cfg_.mass_var_r = mass_r;
  cfg_.goal_sampling = sampling;
}

Observation ZeroGEnv::reset() {
  ResetSample s = env_reset(cfg_, rng_);
  state_ = s.state;
  goal_ = s.goal;
  props_ = s.props;
  step_count_ = 0;
  return observation();
}

ZeroGEnv::StepResult ZeroGEnv::step(const Vec6& action) {
  if (done()) {
    throw std::logic_error("ZeroGEnv::step called on a finished episode");
  }

  StepResult result;
  if (!action.allFinite()) {
    // Flag the episode as failed and start a fresh one; training treats this
    // as a terminal without bootstrap.
    result.done = true;
    result.failed = true;
    result.reward = 0.0;
    result.obs = reset();
    return result;
  }

  Wrench wrench;
  wrench.force = action.head<3>();
  wrench.torque = action.tail<3>();
  wrench = wrench.clamped(cfg_.f_max, cfg_.tau_max);
  if (cfg_.body_frame_force) {
    wrench.force = quat_rotate(state_.attitude, wrench.force);
  }

  state_ = step_dynamics(state_, props_, wrench, cfg_.dt);
  ++step_count_;

  result.reward = total_reward(state_, goal_, reward_cfg_);
  result.done = done();
  result.obs = observation();
  return result;
}

}  // namespace ffrl
