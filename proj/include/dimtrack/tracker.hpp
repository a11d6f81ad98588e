#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "dimtrack/motion.hpp"
#include "dimtrack/sensor.hpp"
#include "dimtrack/types.hpp"

namespace dimtrack {

/// Markov-switched motion model bank shared by the tracker and the
/// multiple-model TBD filters.
struct ModeSet {
  std::vector<MotionModel> models;
  Eigen::MatrixXd transition;  // row-stochastic, size() x size()

  int size() const { return static_cast<int>(models.size()); }
  void validate() const;

  static ModeSet single(MotionModel model);

  /// Low/high process-noise constant-velocity pair (q = 0.01 and 1.0) with
  /// sticky mode transitions [[0.95, 0.05], [0.05, 0.95]].
  static ModeSet default_two_mode(double T);
};

struct TrackerParticle {
  StateVector state;
  int mode = 0;
  double weight = 0.0;
};

struct TrackerParticleSet {
  std::vector<TrackerParticle> particles;
  bool diverged = false;
};

/// Probabilistic-data-association update parameters. Detections report the
/// occupied cell center; measurement_sigma models the cell quantization
/// (delta / sqrt(12) by default). Detections carrying a multi-cell path also
/// measure velocity, with path_velocity_sigma noise per axis.
struct PdaConfig {
  double gate_radius = 5.0;
  double pd_design = 0.9;
  double clutter_density = 1e-4;  // expected false detections per cell per frame
  double measurement_sigma = 0.2886751345948129;
  double path_velocity_sigma = 0.4;
  double inject_fraction = 0.1;  // particles redrawn at the strongest
                                 // validated detection each update
  int n_particles = 2000;
  int max_coast_frames = 5;  // track dropped after this many unvalidated frames

  void validate() const;
};

/// Velocity implied by a detection's cell path, (last - first) * delta over
/// the spanned periods; empty for single-cell paths.
std::optional<std::pair<double, double>> path_velocity(const Detection& det,
                                                       const SensorConfig& sensor,
                                                       double T);

/// Particle cloud around a detection: position centered on the detected cell
/// with 1-cell spread, velocity centered on the path-derived estimate
/// ((last - first) * delta / ((M - 1) * T), zero for single-cell paths) with
/// 1 cell/period spread, modes uniform, weights uniform.
TrackerParticleSet init_track(const Detection& det, const SensorConfig& sensor,
                              const ModeSet& modes, const PdaConfig& cfg,
                              Rng& rng);

struct TrackStepResult {
  StateVector estimate;
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
  int validated = 0;
};

/// Predict through the mode-switched dynamics, gate detections around the
/// predicted position, apply the PDA association-weighted update, resample
/// when the effective sample size drops below half the particle count.
TrackStepResult track_step(TrackerParticleSet& pf,
                           const std::vector<Detection>& detections,
                           const SensorConfig& sensor, const ModeSet& modes,
                           const PdaConfig& cfg, Rng& rng);

double effective_sample_size(const std::vector<TrackerParticle>& particles);

/// Systematic resampling (one uniform draw); weights reset to 1/N.
void systematic_resample(std::vector<TrackerParticle>& particles, Rng& rng);

StateVector weighted_mean(const std::vector<TrackerParticle>& particles);

Eigen::Matrix4d weighted_covariance(const std::vector<TrackerParticle>& particles,
                                    const StateVector& mean);

}  // namespace dimtrack
