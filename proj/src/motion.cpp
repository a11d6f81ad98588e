#include "dimtrack/motion.hpp"

#include <stdexcept>

namespace dimtrack {

namespace {

Eigen::Matrix4d cv_transition(double T) {
  Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
  F(0, 1) = T;
  F(2, 3) = T;
  return F;
}

// Noise transform B with B * B^T == Q, valid for semidefinite Q.
Eigen::Matrix4d noise_transform(const Eigen::Matrix4d& Q) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(Q);
  Eigen::Vector4d d = eig.eigenvalues();
  constexpr double tol = 1e-12;
  for (int k = 0; k < 4; ++k) {
    if (d[k] < -tol * std::max(1.0, Q.norm())) {
      throw std::invalid_argument("MotionModel: Q has a negative eigenvalue");
    }
    d[k] = d[k] > 0.0 ? std::sqrt(d[k]) : 0.0;
  }
  return eig.eigenvectors() * d.asDiagonal();
}

}  // namespace

MotionModel MotionModel::constant_velocity(double T, double q) {
  if (!(T > 0.0) || q < 0.0) {
    throw std::invalid_argument("MotionModel: T must be > 0 and q >= 0");
  }
  const double t2 = T * T;
  const double t3 = t2 * T;
  Eigen::Matrix4d Q = Eigen::Matrix4d::Zero();
  for (int axis : {0, 2}) {
    Q(axis, axis) = q * t3 / 3.0;
    Q(axis, axis + 1) = q * t2 / 2.0;
    Q(axis + 1, axis) = q * t2 / 2.0;
    Q(axis + 1, axis + 1) = q * T;
  }
  MotionModel m;
  m.T = T;
  m.F = cv_transition(T);
  m.Q = Q;
  m.noise_tf = noise_transform(Q);
  return m;
}

MotionModel MotionModel::with_covariance(double T, const Eigen::Matrix4d& Q) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("MotionModel: T must be > 0");
  }
  if (!Q.isApprox(Q.transpose(), 1e-9)) {
    throw std::invalid_argument("MotionModel: Q must be symmetric");
  }
  MotionModel m;
  m.T = T;
  m.F = cv_transition(T);
  m.Q = Q;
  m.noise_tf = noise_transform(Q);
  return m;
}

StateVector propagate_state(const StateVector& state, const MotionModel& model,
                            Rng& rng) {
  // Always consumes four normal draws so that draw order is independent of Q.
  Eigen::Vector4d eta;
  for (int k = 0; k < 4; ++k) eta[k] = rng.normal();
  const Eigen::Vector4d next = model.F * to_vec(state) + model.noise_tf * eta;
  return from_vec(next);
}

}  // namespace dimtrack
