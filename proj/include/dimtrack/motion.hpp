#pragma once

#include <Eigen/Dense>

#include "dimtrack/rng.hpp"
#include "dimtrack/types.hpp"

namespace dimtrack {

/// Constant-velocity transition over [px, vx, py, vy] with additive Gaussian
/// process noise. `noise_tf * noise_tf^T == Q`.
struct MotionModel {
  double T = 1.0;
  Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d Q = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d noise_tf = Eigen::Matrix4d::Zero();

  /// Discrete white-noise-acceleration model with intensity q
  /// (cells^2 / period^3) on each axis.
  static MotionModel constant_velocity(double T, double q);

  /// Constant-velocity F with a caller-supplied process-noise covariance.
  /// Throws std::invalid_argument if Q is not symmetric positive
  /// semidefinite.
  static MotionModel with_covariance(double T, const Eigen::Matrix4d& Q);
};

StateVector propagate_state(const StateVector& state, const MotionModel& model,
                            Rng& rng);

inline Eigen::Vector4d to_vec(const StateVector& s) {
  return {s.px, s.vx, s.py, s.vy};
}

inline StateVector from_vec(const Eigen::Vector4d& v) {
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace dimtrack
