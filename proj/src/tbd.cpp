#include "dimtrack/tbd.hpp"

#include <cmath>
#include <stdexcept>

#include "dimtrack/cdt.hpp"

namespace dimtrack {

void ExistenceModel::validate() const {
  for (double p : {p_birth, p_death, p_init}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("ExistenceModel: probabilities must be in [0, 1]");
    }
  }
}

double existence_predict(double p, const ExistenceModel& ex) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("existence_predict: p must be in [0, 1]");
  }
  return ex.p_birth * (1.0 - p) + (1.0 - ex.p_death) * p;
}

void TbdConfig::validate() const {
  if (n_particles < 1) {
    throw std::invalid_argument("TbdConfig: n_particles must be >= 1");
  }
  if (!(declare_threshold >= 0.0 && declare_threshold <= 1.0)) {
    throw std::invalid_argument("TbdConfig: declare_threshold must be in [0, 1]");
  }
  if (!(birth_velocity_std >= 0.0)) {
    throw std::invalid_argument("TbdConfig: birth_velocity_std must be >= 0");
  }
}

double particle_likelihood_ratio(const StateVector& state, const Frame& frame,
                                 const SensorConfig& sensor) {
  const CellIndex c = cell_of(sensor, state.px, state.py);
  if (!in_grid(sensor, c)) return 1.0;
  return cell_likelihood_ratio(frame.at(c), sensor.intensity, sensor.sigma);
}

namespace {

std::vector<CellIndex> birth_cells(const Frame& frame, double threshold) {
  std::vector<CellIndex> cells;
  for (int i = 1; i <= frame.rows; ++i) {
    for (int j = 1; j <= frame.cols; ++j) {
      if (frame.at({i, j}) > threshold) cells.push_back({i, j});
    }
  }
  if (cells.empty()) {
    // No cell qualifies; fall back to a uniform proposal over the grid.
    for (int i = 1; i <= frame.rows; ++i) {
      for (int j = 1; j <= frame.cols; ++j) cells.push_back({i, j});
    }
  }
  return cells;
}

TbdParticle birth_particle(const std::vector<CellIndex>& cells,
                           const SensorConfig& sensor, const ModeSet& modes,
                           const TbdConfig& cfg, Rng& rng) {
  const CellIndex c = cells[rng.uniform_int(0, static_cast<int>(cells.size()) - 1)];
  TbdParticle p;
  // Position uniform within the cell footprint ((i-1) d, i d].
  p.state.px = (c.i - rng.uniform01()) * sensor.delta_x;
  p.state.py = (c.j - rng.uniform01()) * sensor.delta_y;
  p.state.vx = rng.normal(0.0, cfg.birth_velocity_std);
  p.state.vy = rng.normal(0.0, cfg.birth_velocity_std);
  p.mode = modes.size() > 1 ? rng.uniform_int(0, modes.size() - 1) : 0;
  p.exists = true;
  return p;
}

TbdParticle initial_particle(const SensorConfig& sensor, const ModeSet& modes,
                             const TbdConfig& cfg, Rng& rng) {
  TbdParticle p;
  p.state.px = rng.uniform(0.0, sensor.rows * sensor.delta_x);
  p.state.py = rng.uniform(0.0, sensor.cols * sensor.delta_y);
  p.state.vx = rng.normal(0.0, cfg.birth_velocity_std);
  p.state.vy = rng.normal(0.0, cfg.birth_velocity_std);
  p.mode = modes.size() > 1 ? rng.uniform_int(0, modes.size() - 1) : 0;
  return p;
}

void propagate_particle(TbdParticle& p, const ModeSet& modes, Rng& rng) {
  if (modes.size() > 1) {
    const double u = rng.uniform01();
    double acc = 0.0;
    int next = modes.size() - 1;
    for (int c = 0; c < modes.size(); ++c) {
      acc += modes.transition(p.mode, c);
      if (u <= acc) {
        next = c;
        break;
      }
    }
    p.mode = next;
  }
  p.state = propagate_state(p.state, modes.models[p.mode], rng);
}

std::vector<int> systematic_indices(const std::vector<TbdParticle>& particles,
                                    int count, Rng& rng) {
  std::vector<int> idx;
  idx.reserve(count);
  if (count == 0) return idx;
  double total = 0.0;
  for (const TbdParticle& p : particles) total += p.weight;
  const double step = total / count;
  double position = rng.uniform01() * step;
  double cumulative = 0.0;
  size_t k = 0;
  for (int out = 0; out < count; ++out) {
    while (k + 1 < particles.size() && cumulative + particles[k].weight < position) {
      cumulative += particles[k].weight;
      ++k;
    }
    idx.push_back(static_cast<int>(k));
    position += step;
  }
  return idx;
}

}  // namespace

TbdBelief2 tbd2_init(const ExistenceModel& ex, const TbdConfig& cfg,
                     const SensorConfig& sensor, const ModeSet& modes, Rng& rng) {
  ex.validate();
  cfg.validate();
  modes.validate();
  TbdBelief2 belief;
  belief.p_exist = ex.p_init;
  belief.particles.resize(cfg.n_particles);
  const double w = 1.0 / cfg.n_particles;
  for (TbdParticle& p : belief.particles) {
    p = initial_particle(sensor, modes, cfg, rng);
    p.weight = w;
  }
  return belief;
}

void tbd2_step(TbdBelief2& belief, const Frame& frame, const ExistenceModel& ex,
               const ModeSet& modes, const TbdConfig& cfg,
               const SensorConfig& sensor, Rng& rng) {
  const int n = cfg.n_particles;
  const double p_prev = belief.p_exist;
  const double p_pred = existence_predict(p_prev, ex);

  // Mixture proposal: continuing mass (1 - P_d) p, newborn mass P_b (1 - p).
  int n_birth = 0;
  if (p_pred > 0.0) {
    const double birth_frac = ex.p_birth * (1.0 - p_prev) / p_pred;
    n_birth = static_cast<int>(std::lround(birth_frac * n));
    n_birth = std::max(0, std::min(n, n_birth));
  }
  const int n_continue = n - n_birth;

  std::vector<TbdParticle> next;
  next.reserve(n);
  const std::vector<int> ancestors =
      systematic_indices(belief.particles, n_continue, rng);
  for (int a : ancestors) {
    TbdParticle p = belief.particles[a];
    propagate_particle(p, modes, rng);
    next.push_back(p);
  }
  if (n_birth > 0) {
    const std::vector<CellIndex> cells = birth_cells(frame, cfg.birth_threshold);
    for (int b = 0; b < n_birth; ++b) {
      next.push_back(birth_particle(cells, sensor, modes, cfg, rng));
    }
  }

  // Likelihood-ratio weighting and the factorized existence update.
  double lr_sum = 0.0;
  for (TbdParticle& p : next) {
    p.weight = particle_likelihood_ratio(p.state, frame, sensor);
    lr_sum += p.weight;
  }
  const double lr_mean = lr_sum / n;

  if (!(lr_sum > 0.0) || !std::isfinite(lr_sum)) {
    belief.diverged = true;
    belief.p_exist = p_pred;
    const double w = 1.0 / n;
    for (TbdParticle& p : next) p.weight = w;
  } else {
    belief.p_exist =
        p_pred * lr_mean / (p_pred * lr_mean + (1.0 - p_pred));
    for (TbdParticle& p : next) p.weight /= lr_sum;
  }
  belief.particles = std::move(next);
}

Tbd1State tbd1_init(const ExistenceModel& ex, const TbdConfig& cfg,
                    const SensorConfig& sensor, const ModeSet& modes, Rng& rng) {
  ex.validate();
  cfg.validate();
  modes.validate();
  Tbd1State state;
  state.particles.resize(cfg.n_particles);
  const double w = 1.0 / cfg.n_particles;
  double alive = 0.0;
  for (TbdParticle& p : state.particles) {
    p = initial_particle(sensor, modes, cfg, rng);
    p.exists = rng.uniform01() < ex.p_init;
    p.weight = w;
    if (p.exists) alive += w;
  }
  state.p_exist = alive;
  return state;
}

void tbd1_step(Tbd1State& state, const Frame& frame, const ExistenceModel& ex,
               const ModeSet& modes, const TbdConfig& cfg,
               const SensorConfig& sensor, Rng& rng) {
  std::vector<CellIndex> cells;
  double weight_sum = 0.0;
  for (TbdParticle& p : state.particles) {
    if (p.exists) {
      if (rng.uniform01() < ex.p_death) {
        p.exists = false;
      } else {
        propagate_particle(p, modes, rng);
      }
    } else if (rng.uniform01() < ex.p_birth) {
      if (cells.empty()) cells = birth_cells(frame, cfg.birth_threshold);
      const double w = p.weight;
      p = birth_particle(cells, sensor, modes, cfg, rng);
      p.weight = w;
    }
    if (p.exists) {
      p.weight *= particle_likelihood_ratio(p.state, frame, sensor);
    }
    weight_sum += p.weight;
  }

  if (!(weight_sum > 0.0) || !std::isfinite(weight_sum)) {
    state.diverged = true;
    const double w = 1.0 / state.particles.size();
    for (TbdParticle& p : state.particles) p.weight = w;
    weight_sum = 1.0;
  } else {
    for (TbdParticle& p : state.particles) p.weight /= weight_sum;
  }

  double alive = 0.0;
  for (const TbdParticle& p : state.particles) {
    if (p.exists) alive += p.weight;
  }
  state.p_exist = alive;

  const std::vector<int> keep = systematic_indices(
      state.particles, static_cast<int>(state.particles.size()), rng);
  std::vector<TbdParticle> resampled;
  resampled.reserve(state.particles.size());
  const double w = 1.0 / state.particles.size();
  for (int k : keep) {
    resampled.push_back(state.particles[k]);
    resampled.back().weight = w;
  }
  state.particles = std::move(resampled);
}

bool tbd_declare(double p_exist, double threshold) {
  if (!(p_exist >= 0.0 && p_exist <= 1.0) || !(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("tbd_declare: arguments must be in [0, 1]");
  }
  return p_exist > threshold;
}

namespace {

StateVector conditional_mean(const std::vector<TbdParticle>& particles,
                             bool alive_only) {
  StateVector mean;
  double mass = 0.0;
  for (const TbdParticle& p : particles) {
    if (alive_only && !p.exists) continue;
    mean.px += p.weight * p.state.px;
    mean.vx += p.weight * p.state.vx;
    mean.py += p.weight * p.state.py;
    mean.vy += p.weight * p.state.vy;
    mass += p.weight;
  }
  if (!(mass > 0.0)) {
    throw std::runtime_error("tbd_estimate: no existence mass to condition on");
  }
  mean.px /= mass;
  mean.vx /= mass;
  mean.py /= mass;
  mean.vy /= mass;
  return mean;
}

}  // namespace

StateVector tbd_estimate(const TbdBelief2& belief) {
  if (!(belief.p_exist > 0.0)) {
    throw std::runtime_error("tbd_estimate: posterior existence probability is zero");
  }
  return conditional_mean(belief.particles, false);
}

StateVector tbd_estimate(const Tbd1State& state) {
  return conditional_mean(state.particles, true);
}

}  // namespace dimtrack
