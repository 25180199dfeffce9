#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace ffrl {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

// Quaternion, scalar-first components (w, a, b, c). Unit quaternions encode
// body-to-world rotations.
struct Quat {
  double w = 1.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static Quat identity() { return Quat{1.0, 0.0, 0.0, 0.0}; }

  double norm() const { return std::sqrt(w * w + a * a + b * b + c * c); }

  Quat normalized() const {
    const double n = norm();
    return Quat{w / n, a / n, b / n, c / n};
  }

  // q and -q encode the same rotation; the canonical representative has
  // w >= 0.
  Quat canonicalized() const {
    if (w < 0.0) return Quat{-w, -a, -b, -c};
    return *this;
  }

  bool is_finite() const {
    return std::isfinite(w) && std::isfinite(a) && std::isfinite(b) &&
           std::isfinite(c);
  }
};

inline Quat quat_conjugate(const Quat& q) { return Quat{q.w, -q.a, -q.b, -q.c}; }

// Hamilton product p*q.
inline Quat quat_mul(const Quat& p, const Quat& q) {
  return Quat{
      p.w * q.w - p.a * q.a - p.b * q.b - p.c * q.c,
      p.w * q.a + p.a * q.w + p.b * q.c - p.c * q.b,
      p.w * q.b - p.a * q.c + p.b * q.w + p.c * q.a,
      p.w * q.c + p.a * q.b - p.b * q.a + p.c * q.w,
  };
}

// Rotation taking `current` onto `goal`: conj(current)*goal, sign-canonical.
inline Quat quat_error(const Quat& current, const Quat& goal) {
  return quat_mul(quat_conjugate(current), goal).canonicalized();
}

// Geodesic rotation angle, range [0, pi].
inline double quat_angle(const Quat& q) {
  return 2.0 * std::acos(std::clamp(std::abs(q.w), 0.0, 1.0));
}

// Rotate a body-frame vector into the world frame (for unit q).
inline Vec3 quat_rotate(const Quat& q, const Vec3& v) {
  const Vec3 u(q.a, q.b, q.c);
  const Vec3 t = 2.0 * u.cross(v);
  return v + q.w * t + u.cross(t);
}

inline Vec3 quat_rotate_inverse(const Quat& q, const Vec3& v) {
  return quat_rotate(quat_conjugate(q), v);
}

// Exponential map: rotation vector (axis * angle, radians) -> quaternion.
inline Quat quat_exp(const Vec3& rotvec) {
  const double angle = rotvec.norm();
  double k;  // sin(angle/2) / angle, series-expanded near zero
  if (angle < 1e-8) {
    k = 0.5 - angle * angle / 48.0;
  } else {
    k = std::sin(0.5 * angle) / angle;
  }
  return Quat{std::cos(0.5 * angle), k * rotvec.x(), k * rotvec.y(),
              k * rotvec.z()};
}

// Logarithm map: quaternion -> rotation vector with angle in [0, pi].
inline Vec3 quat_to_rotvec(const Quat& q_in) {
  const Quat q = q_in.canonicalized();
  const Vec3 u(q.a, q.b, q.c);
  const double s = u.norm();
  if (s < 1e-12) {
    return 2.0 * u;  // first order, exact at identity
  }
  const double angle = 2.0 * std::atan2(s, q.w);
  return (angle / s) * u;
}

}  // namespace ffrl
