#pragma once

#include "ffrl/quat.hpp"

namespace ffrl {

namespace defaults {
inline constexpr double kDt = 0.016;           // s
inline constexpr double kBaseMass = 9.0877;    // kg
inline constexpr double kCubeSide = 0.305;     // m
inline constexpr double kForceMax = 0.85;      // N, per axis
inline constexpr double kTorqueMax = 0.25;     // N*m, per axis
inline constexpr double kMinMass = 0.5;        // kg, floor after randomization
}  // namespace defaults

// Rigid-body pose and twist. Position and linear velocity are world-frame,
// angular velocity is body-frame, attitude maps body to world.
struct BodyState {
  Vec3 position = Vec3::Zero();
  Quat attitude = Quat::identity();
  Vec3 lin_vel = Vec3::Zero();
  Vec3 ang_vel = Vec3::Zero();

  bool is_finite() const {
    return position.allFinite() && attitude.is_finite() &&
           lin_vel.allFinite() && ang_vel.allFinite();
  }
};

// Mass and principal-axis diagonal inertia.
struct MassProps {
  double mass = defaults::kBaseMass;
  Vec3 inertia_diag = Vec3::Constant(0.14089721541666667);

  bool is_valid() const {
    return mass > 0.0 && (inertia_diag.array() > 0.0).all();
  }
};

// Inertia of a homogeneous cube of the given side length; inertia scales
// linearly with mass at fixed geometry.
inline MassProps cube_mass_props(double mass,
                                 double side = defaults::kCubeSide) {
  MassProps p;
  p.mass = mass;
  p.inertia_diag = Vec3::Constant(mass * side * side / 6.0);
  return p;
}

// Force (world frame) plus torque (body frame) applied at the center of
// mass.
struct Wrench {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();

  bool is_finite() const { return force.allFinite() && torque.allFinite(); }

  Wrench clamped(double f_max, double tau_max) const {
    Wrench out;
    out.force = force.cwiseMax(-f_max).cwiseMin(f_max);
    out.torque = torque.cwiseMax(-tau_max).cwiseMin(tau_max);
    return out;
  }
};

// One semi-implicit Euler step in zero gravity:
//   v'     = v + (F/m) dt
//   x'     = x + v' dt
//   omega' = omega + I^-1 (tau - omega x (I omega)) dt
//   q'     = normalize(q * exp(omega' dt))
// Exact for constant-force translation. Throws std::invalid_argument on
// non-positive dt or non-finite wrench.
BodyState step_dynamics(const BodyState& state, const MassProps& props,
                        const Wrench& wrench, double dt);

}  // namespace ffrl
