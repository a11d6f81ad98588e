#include "dimtrack/tracker.hpp"

#include <cmath>
#include <stdexcept>

namespace dimtrack {

void ModeSet::validate() const {
  if (models.empty()) {
    throw std::invalid_argument("ModeSet: need at least one model");
  }
  const int m = size();
  if (transition.rows() != m || transition.cols() != m) {
    throw std::invalid_argument("ModeSet: transition must be m x m");
  }
  for (int r = 0; r < m; ++r) {
    double row_sum = 0.0;
    for (int c = 0; c < m; ++c) {
      if (transition(r, c) < 0.0) {
        throw std::invalid_argument("ModeSet: transition entries must be >= 0");
      }
      row_sum += transition(r, c);
    }
    if (std::abs(row_sum - 1.0) > 1e-9) {
      throw std::invalid_argument("ModeSet: transition rows must sum to 1");
    }
  }
}

ModeSet ModeSet::single(MotionModel model) {
  ModeSet set;
  set.models = {std::move(model)};
  set.transition = Eigen::MatrixXd::Ones(1, 1);
  return set;
}

ModeSet ModeSet::default_two_mode(double T) {
  ModeSet set;
  set.models = {MotionModel::constant_velocity(T, 0.01),
                MotionModel::constant_velocity(T, 1.0)};
  set.transition = Eigen::MatrixXd(2, 2);
  set.transition << 0.95, 0.05, 0.05, 0.95;
  return set;
}

void PdaConfig::validate() const {
  if (!(gate_radius > 0.0) || !(clutter_density > 0.0) ||
      !(measurement_sigma > 0.0) || !(path_velocity_sigma > 0.0)) {
    throw std::invalid_argument("PdaConfig: gate, clutter, and sigmas must be > 0");
  }
  if (!(pd_design > 0.0 && pd_design <= 1.0)) {
    throw std::invalid_argument("PdaConfig: pd_design must be in (0, 1]");
  }
  if (n_particles < 1 || max_coast_frames < 1) {
    throw std::invalid_argument("PdaConfig: particle and coast counts must be >= 1");
  }
  if (!(inject_fraction >= 0.0 && inject_fraction < 1.0)) {
    throw std::invalid_argument("PdaConfig: inject_fraction must be in [0, 1)");
  }
}

namespace {

int sample_mode(const Eigen::MatrixXd& transition, int mode, double u) {
  const int m = static_cast<int>(transition.cols());
  double acc = 0.0;
  for (int c = 0; c < m; ++c) {
    acc += transition(mode, c);
    if (u <= acc) return c;
  }
  return m - 1;
}

double gauss2(double dx, double dy, double var) {
  return std::exp(-(dx * dx + dy * dy) / (2.0 * var)) / (2.0 * M_PI * var);
}

}  // namespace

std::optional<std::pair<double, double>> path_velocity(const Detection& det,
                                                       const SensorConfig& sensor,
                                                       double T) {
  if (det.path.size() < 2) return std::nullopt;
  const CellIndex first = det.path.front().cell;
  const CellIndex last = det.path.back().cell;
  const double span = static_cast<double>(det.path.size() - 1) * T;
  return std::make_pair((last.i - first.i) * sensor.delta_x / span,
                        (last.j - first.j) * sensor.delta_y / span);
}

TrackerParticleSet init_track(const Detection& det, const SensorConfig& sensor,
                              const ModeSet& modes, const PdaConfig& cfg,
                              Rng& rng) {
  modes.validate();
  cfg.validate();
  const auto [cx, cy] = cell_center(sensor, det.cell);

  double v0x = 0.0, v0y = 0.0;
  if (const auto v = path_velocity(det, sensor, modes.models[0].T)) {
    v0x = v->first;
    v0y = v->second;
  }

  TrackerParticleSet pf;
  pf.particles.resize(cfg.n_particles);
  const double w = 1.0 / cfg.n_particles;
  for (TrackerParticle& p : pf.particles) {
    p.state.px = rng.normal(cx, sensor.delta_x);
    p.state.py = rng.normal(cy, sensor.delta_y);
    p.state.vx = rng.normal(v0x, 1.0);
    p.state.vy = rng.normal(v0y, 1.0);
    p.mode = modes.size() > 1 ? rng.uniform_int(0, modes.size() - 1) : 0;
    p.weight = w;
  }
  return pf;
}

double effective_sample_size(const std::vector<TrackerParticle>& particles) {
  double sum_sq = 0.0;
  for (const TrackerParticle& p : particles) sum_sq += p.weight * p.weight;
  return sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;
}

void systematic_resample(std::vector<TrackerParticle>& particles, Rng& rng) {
  const size_t n = particles.size();
  std::vector<TrackerParticle> out;
  out.reserve(n);
  const double step = 1.0 / static_cast<double>(n);
  double position = rng.uniform01() * step;
  double cumulative = 0.0;
  size_t idx = 0;
  for (size_t k = 0; k < n; ++k) {
    while (idx + 1 < n && cumulative + particles[idx].weight < position) {
      cumulative += particles[idx].weight;
      ++idx;
    }
    out.push_back(particles[idx]);
    out.back().weight = step;
    position += step;
  }
  particles = std::move(out);
}

StateVector weighted_mean(const std::vector<TrackerParticle>& particles) {
  StateVector m;
  for (const TrackerParticle& p : particles) {
    m.px += p.weight * p.state.px;
    m.vx += p.weight * p.state.vx;
    m.py += p.weight * p.state.py;
    m.vy += p.weight * p.state.vy;
  }
  return m;
}

Eigen::Matrix4d weighted_covariance(const std::vector<TrackerParticle>& particles,
                                    const StateVector& mean) {
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  const Eigen::Vector4d mu = to_vec(mean);
  for (const TrackerParticle& p : particles) {
    const Eigen::Vector4d d = to_vec(p.state) - mu;
    cov += p.weight * d * d.transpose();
  }
  return cov;
}

TrackStepResult track_step(TrackerParticleSet& pf,
                           const std::vector<Detection>& detections,
                           const SensorConfig& sensor, const ModeSet& modes,
                           const PdaConfig& cfg, Rng& rng) {
  modes.validate();
  cfg.validate();

  // Predict through mode-switched dynamics. The mode draw is skipped for a
  // single-model set so that it reduces exactly to a plain particle filter.
  for (TrackerParticle& p : pf.particles) {
    if (modes.size() > 1) {
      p.mode = sample_mode(modes.transition, p.mode, rng.uniform01());
    }
    p.state = propagate_state(p.state, modes.models[p.mode], rng);
  }

  // Gate detections around the predicted position mean.
  const StateVector predicted = weighted_mean(pf.particles);
  struct Validated {
    double zx, zy;
    std::optional<std::pair<double, double>> vel;
    double vel_var = 0.0;
    double statistic = 0.0;
  };
  std::vector<Validated> validated;
  for (const Detection& d : detections) {
    const auto [zx, zy] = cell_center(sensor, d.cell);
    const double dist = std::hypot(zx - predicted.px, zy - predicted.py);
    if (dist <= cfg.gate_radius) {
      Validated v{zx, zy, path_velocity(d, sensor, modes.models[0].T), 0.0,
                  d.statistic};
      if (v.vel) {
        // Cell quantization error shrinks with the spanned path length.
        const double span = static_cast<double>(d.path.size() - 1);
        const double sv = cfg.path_velocity_sigma * 2.0 / span;
        v.vel_var = sv * sv;
      }
      validated.push_back(v);
    }
  }

  if (!validated.empty()) {
    // Rejuvenation: redraw a slice of the cloud at the strongest validated
    // detection so the filter can relock when its support has drifted off
    // the measurement.
    const int n_inject = static_cast<int>(
        std::lround(cfg.inject_fraction * static_cast<double>(pf.particles.size())));
    if (n_inject > 0) {
      const Validated* anchor = &validated.front();
      for (const Validated& v : validated) {
        if (v.statistic > anchor->statistic) anchor = &v;
      }
      const double mean_w = 1.0 / static_cast<double>(pf.particles.size());
      for (size_t i = pf.particles.size() - n_inject; i < pf.particles.size();
           ++i) {
        // Relocate position only; the slot keeps its predicted velocity.
        TrackerParticle& p = pf.particles[i];
        p.state.px = rng.normal(anchor->zx, cfg.measurement_sigma);
        p.state.py = rng.normal(anchor->zy, cfg.measurement_sigma);
        p.weight = mean_w;
      }
    }
  }

  if (!validated.empty()) {
    // PDA association probabilities from the predicted measurement density.
    double sxx = cfg.measurement_sigma * cfg.measurement_sigma;
    for (const TrackerParticle& p : pf.particles) {
      const double dx = p.state.px - predicted.px;
      const double dy = p.state.py - predicted.py;
      sxx += p.weight * (dx * dx + dy * dy) / 2.0;  // isotropic spread
    }
    const double lambda =
        cfg.clutter_density / (sensor.delta_x * sensor.delta_y);
    std::vector<double> assoc(validated.size() + 1, 0.0);
    assoc[0] = 1.0 - cfg.pd_design;
    double denom = assoc[0];
    for (size_t j = 0; j < validated.size(); ++j) {
      const double lj =
          gauss2(validated[j].zx - predicted.px, validated[j].zy - predicted.py, sxx);
      assoc[j + 1] = cfg.pd_design * lj / lambda;
      denom += assoc[j + 1];
    }
    for (double& a : assoc) a /= denom;

    const double gate_area = M_PI * cfg.gate_radius * cfg.gate_radius;
    const double r2 = cfg.measurement_sigma * cfg.measurement_sigma;
    double sum_w = 0.0;
    for (TrackerParticle& p : pf.particles) {
      double like = assoc[0] / gate_area;
      for (size_t j = 0; j < validated.size(); ++j) {
        double term = assoc[j + 1] * gauss2(validated[j].zx - p.state.px,
                                            validated[j].zy - p.state.py, r2);
        if (validated[j].vel) {
          term *= gauss2(validated[j].vel->first - p.state.vx,
                         validated[j].vel->second - p.state.vy,
                         validated[j].vel_var);
        }
        like += term;
      }
      p.weight *= like;
      sum_w += p.weight;
    }
    if (!(sum_w > 0.0) || !std::isfinite(sum_w)) {
      pf.diverged = true;
      const double w = 1.0 / pf.particles.size();
      for (TrackerParticle& p : pf.particles) p.weight = w;
    } else {
      for (TrackerParticle& p : pf.particles) p.weight /= sum_w;
    }
    if (effective_sample_size(pf.particles) <
        0.5 * static_cast<double>(pf.particles.size())) {
      systematic_resample(pf.particles, rng);
    }
  }

  TrackStepResult result;
  result.estimate = weighted_mean(pf.particles);
  result.covariance = weighted_covariance(pf.particles, result.estimate);
  result.validated = static_cast<int>(validated.size());
  return result;
}

}  // namespace dimtrack
