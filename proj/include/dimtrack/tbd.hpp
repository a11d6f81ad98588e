#pragma once

#include <vector>

#include "dimtrack/sensor.hpp"
#include "dimtrack/tracker.hpp"
#include "dimtrack/types.hpp"

namespace dimtrack {

/// Two-state Markov chain over object existence.
struct ExistenceModel {
  double p_birth = 0.05;
  double p_death = 0.05;
  double p_init = 0.05;

  void validate() const;

  friend bool operator==(const ExistenceModel&, const ExistenceModel&) = default;
};

/// One step of the existence chain: P_b (1 - p) + (1 - P_d) p.
double existence_predict(double p, const ExistenceModel& ex);

struct TbdConfig {
  int n_particles = 4000;
  double declare_threshold = 0.5;
  double birth_threshold = 0.5244005127080407;  // sigma * Phi^-1(0.7) at sigma 1
  double birth_velocity_std = 1.0;

  void validate() const;
};

struct TbdParticle {
  StateVector state;
  int mode = 0;
  double weight = 0.0;
  bool exists = false;  // TBD1 family only
};

/// Per-frame likelihood ratio of the frame given an object at `state` versus
/// noise only: only the occupied cell contributes under the point-object
/// model. Off-grid states are uninformative (ratio 1).
double particle_likelihood_ratio(const StateVector& state, const Frame& frame,
                                 const SensorConfig& sensor);

/// TBD2 belief: particles conditioned on existence plus the scalar posterior
/// existence probability (the factorized joint density).
struct TbdBelief2 {
  std::vector<TbdParticle> particles;
  double p_exist = 0.0;
  bool diverged = false;
};

TbdBelief2 tbd2_init(const ExistenceModel& ex, const TbdConfig& cfg,
                     const SensorConfig& sensor, const ModeSet& modes, Rng& rng);

/// One TBD2 recursion: Markov existence prediction, mixed
/// continuing/newborn proposal, likelihood-ratio weighting, and the
/// existence update p' = p_pred * Lbar / (p_pred * Lbar + 1 - p_pred).
void tbd2_step(TbdBelief2& belief, const Frame& frame, const ExistenceModel& ex,
               const ModeSet& modes, const TbdConfig& cfg,
               const SensorConfig& sensor, Rng& rng);

/// TBD1 carries the existence variable inside each particle.
struct Tbd1State {
  std::vector<TbdParticle> particles;
  double p_exist = 0.0;
  bool diverged = false;
};

Tbd1State tbd1_init(const ExistenceModel& ex, const TbdConfig& cfg,
                    const SensorConfig& sensor, const ModeSet& modes, Rng& rng);

/// One TBD1 recursion: per-particle existence transitions (dead particles
/// re-enter through the birth proposal), mode-switched propagation of alive
/// particles, likelihood weighting (dead particles keep factor 1),
/// normalization, and systematic resampling. p_exist is the alive weight
/// mass before resampling.
void tbd1_step(Tbd1State& state, const Frame& frame, const ExistenceModel& ex,
               const ModeSet& modes, const TbdConfig& cfg,
               const SensorConfig& sensor, Rng& rng);

/// Strict threshold test on the posterior existence probability.
bool tbd_declare(double p_exist, double threshold);

/// Weighted mean of the existence-conditioned particle set. Throws
/// std::runtime_error when there is no existence mass to condition on.
StateVector tbd_estimate(const TbdBelief2& belief);
StateVector tbd_estimate(const Tbd1State& state);

}  // namespace dimtrack
