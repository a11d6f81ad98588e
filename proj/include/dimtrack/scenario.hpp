#pragma once

#include <string>
#include <vector>

#include "dimtrack/motion.hpp"
#include "dimtrack/sensor.hpp"

namespace dimtrack {

/// Velocity override applied at `frame`, before the propagation step out of
/// that frame.
struct ManeuverEntry {
  int frame = 0;
  double vx = 0.0;
  double vy = 0.0;

  friend bool operator==(const ManeuverEntry&, const ManeuverEntry&) = default;
};

/// Everything needed to regenerate one scenario: grid, dynamics, presence
/// interval, initial state, SNR, maneuvers, and the seed. Object intensity is
/// derived from snr_db and sensor.sigma, never stored.
struct ScenarioConfig {
  std::string name = "custom";
  SensorConfig sensor;
  double T = 1.0;
  double process_noise_q = 0.01;
  int n_frames = 40;
  bool has_object = true;  // false runs a noise-only campaign
  int birth_frame = 1;
  int death_frame = 40;
  StateVector initial_state;
  double snr_db = 6.0;
  std::vector<double> snr_variants;  // empty means {snr_db}
  std::vector<ManeuverEntry> maneuver_schedule;
  std::uint64_t seed = 1;

  void validate() const;

  double intensity() const { return snr_to_intensity(snr_db, sensor.sigma); }

  /// Sensor with intensity resolved from snr_db.
  SensorConfig resolved_sensor() const;

  MotionModel motion() const {
    return MotionModel::constant_velocity(T, process_noise_q);
  }

  /// Copy with the given SNR selected.
  ScenarioConfig with_snr(double db) const;

  std::vector<double> variants() const {
    return snr_variants.empty() ? std::vector<double>{snr_db} : snr_variants;
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct TruthPoint {
  int frame = 0;
  bool present = false;
  StateVector state;
};

/// Ground-truth states for frames 1..n_frames. Absent outside
/// [birth_frame, death_frame]; maneuver overrides replace the velocity at
/// their frame before the next propagation step.
std::vector<TruthPoint> generate_trajectory(const ScenarioConfig& cfg, Rng& rng);

std::vector<Frame> render_frames(const ScenarioConfig& cfg,
                                 const std::vector<TruthPoint>& truth, Rng& rng,
                                 SimEvents* events = nullptr);

/// Preset scenarios ex1..ex6. Throws std::invalid_argument for unknown names,
/// listing the available presets.
ScenarioConfig load_scenario(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace dimtrack
