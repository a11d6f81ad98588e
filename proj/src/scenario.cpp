#include "dimtrack/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dimtrack {

void ScenarioConfig::validate() const {
  sensor.validate();
  if (!(T > 0.0) || process_noise_q < 0.0) {
    throw std::invalid_argument("ScenarioConfig: T must be > 0 and q >= 0");
  }
  if (n_frames < 1) {
    throw std::invalid_argument("ScenarioConfig: n_frames must be >= 1");
  }
  if (has_object &&
      !(birth_frame >= 1 && birth_frame <= death_frame && death_frame <= n_frames)) {
    throw std::invalid_argument(
        "ScenarioConfig: need 1 <= birth_frame <= death_frame <= n_frames");
  }
  if (!initial_state.finite()) {
    throw std::invalid_argument("ScenarioConfig: initial_state must be finite");
  }
  if (!std::isfinite(snr_db)) {
    throw std::invalid_argument("ScenarioConfig: snr_db must be finite");
  }
  for (const ManeuverEntry& m : maneuver_schedule) {
    if (!has_object) break;  // schedule is ignored without an object
    if (m.frame < birth_frame || m.frame > death_frame) {
      std::ostringstream msg;
      msg << "ScenarioConfig: maneuver at frame " << m.frame
          << " outside presence interval [" << birth_frame << ", " << death_frame
          << "]";
      throw std::invalid_argument(msg.str());
    }
    if (!std::isfinite(m.vx) || !std::isfinite(m.vy)) {
      throw std::invalid_argument("ScenarioConfig: maneuver velocity must be finite");
    }
  }
}

SensorConfig ScenarioConfig::resolved_sensor() const {
  SensorConfig s = sensor;
  s.intensity = intensity();
  return s;
}

ScenarioConfig ScenarioConfig::with_snr(double db) const {
  ScenarioConfig c = *this;
  c.snr_db = db;
  return c;
}

std::vector<TruthPoint> generate_trajectory(const ScenarioConfig& cfg, Rng& rng) {
  cfg.validate();
  const MotionModel model = cfg.motion();

  std::vector<TruthPoint> truth(cfg.n_frames);
  for (int k = 1; k <= cfg.n_frames; ++k) {
    truth[k - 1].frame = k;
    truth[k - 1].present =
        cfg.has_object && k >= cfg.birth_frame && k <= cfg.death_frame;
  }
  if (!cfg.has_object) return truth;

  auto apply_maneuver = [&](int frame, StateVector& s) {
    for (const ManeuverEntry& m : cfg.maneuver_schedule) {
      if (m.frame == frame) {
        s.vx = m.vx;
        s.vy = m.vy;
      }
    }
  };

  StateVector s = cfg.initial_state;
  apply_maneuver(cfg.birth_frame, s);
  truth[cfg.birth_frame - 1].state = s;
  for (int k = cfg.birth_frame + 1; k <= cfg.death_frame; ++k) {
    s = propagate_state(s, model, rng);
    apply_maneuver(k, s);
    truth[k - 1].state = s;
  }
  return truth;
}

std::vector<Frame> render_frames(const ScenarioConfig& cfg,
                                 const std::vector<TruthPoint>& truth, Rng& rng,
                                 SimEvents* events) {
  const SensorConfig sensor = cfg.resolved_sensor();
  std::vector<Frame> frames;
  frames.reserve(truth.size());
  for (const TruthPoint& t : truth) {
    std::optional<StateVector> state;
    if (t.present) state = t.state;
    frames.push_back(render_frame(state, sensor, t.frame, rng, events));
  }
  return frames;
}

namespace {

ScenarioConfig base_preset(const std::string& name, int birth, int death,
                           double snr_primary, std::vector<double> variants) {
  ScenarioConfig cfg;
  cfg.name = name;
  cfg.n_frames = 40;
  cfg.birth_frame = birth;
  cfg.death_frame = death;
  cfg.snr_db = snr_primary;
  cfg.snr_variants = std::move(variants);
  cfg.seed = 20250810;
  return cfg;
}

}  // namespace

ScenarioConfig load_scenario(const std::string& name) {
  // Trajectories are synthetic: straight segments plus one turn, sized to
  // stay inside the 20x20 grid (ex5 adds >1 cell/frame fast segments and a
  // sharp mid-track turn).
  if (name == "ex1" || name == "ex2") {
    ScenarioConfig cfg = name == "ex1"
                             ? base_preset("ex1", 10, 35, 6.0, {6.0, 12.0})
                             : base_preset("ex2", 10, 35, 5.0, {5.0});
    cfg.initial_state = {4.0, 0.6, 4.0, 0.5};
    cfg.maneuver_schedule = {{22, -0.5, 0.6}};
    return cfg;
  }
  if (name == "ex3" || name == "ex4" || name == "ex6") {
    ScenarioConfig cfg = name == "ex3"   ? base_preset("ex3", 5, 35, 3.0, {3.0, 6.0})
                         : name == "ex4" ? base_preset("ex4", 5, 35, 3.0, {3.0, 5.0, 9.0})
                                         : base_preset("ex6", 5, 35, 1.0, {1.0, 2.0, 3.0});
    cfg.initial_state = {3.0, 0.55, 3.0, 0.45};
    cfg.maneuver_schedule = {{20, -0.45, 0.55}};
    return cfg;
  }
  if (name == "ex5") {
    ScenarioConfig cfg = base_preset("ex5", 5, 35, 3.0, {3.0});
    cfg.initial_state = {0.8, 1.4, 17.5, -1.2};
    cfg.maneuver_schedule = {{17, -0.8, 0.4}, {22, 0.0, 0.9}, {29, -1.4, 0.9}};
    return cfg;
  }
  std::ostringstream msg;
  msg << "unknown scenario '" << name << "'; presets:";
  for (const std::string& p : preset_names()) msg << ' ' << p;
  throw std::invalid_argument(msg.str());
}

std::vector<std::string> preset_names() {
  return {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6"};
}

}  // namespace dimtrack
