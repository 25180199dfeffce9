#include "ffrl/sixdof.hpp"

#include <stdexcept>

namespace ffrl {

BodyState step_dynamics(const BodyState& state, const MassProps& props,
                        const Wrench& wrench, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step_dynamics: dt must be > 0");
  }
  if (!wrench.is_finite()) {
    throw std::invalid_argument("step_dynamics: non-finite wrench");
  }

  BodyState next;
  next.lin_vel = state.lin_vel + (wrench.force / props.mass) * dt;
  next.position = state.position + next.lin_vel * dt;

  const Vec3& inertia = props.inertia_diag;
  const Vec3 ang_mom = inertia.cwiseProduct(state.ang_vel);
  const Vec3 gyro = state.ang_vel.cross(ang_mom);
  next.ang_vel =
      state.ang_vel + (wrench.torque - gyro).cwiseQuotient(inertia) * dt;

  // Body-frame angular velocity composes on the right.
  next.attitude =
      quat_mul(state.attitude, quat_exp(next.ang_vel * dt)).normalized();
  return next;
}

}  // namespace ffrl
