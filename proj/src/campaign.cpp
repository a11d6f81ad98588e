#include "dimtrack/campaign.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dimtrack/mathx.hpp"
#include "dimtrack/rng.hpp"

namespace dimtrack {

Method parse_method(const std::string& name) {
  if (name == "cdt") return Method::Cdt;
  if (name == "sdt") return Method::Sdt;
  if (name == "tbd1") return Method::Tbd1;
  if (name == "tbd2") return Method::Tbd2;
  if (name == "mmtbd1") return Method::MmTbd1;
  if (name == "mmtbd2") return Method::MmTbd2;
  std::ostringstream msg;
  msg << "unknown method '" << name << "'; methods:";
  for (const std::string& m : method_names()) msg << ' ' << m;
  throw std::invalid_argument(msg.str());
}

std::string method_name(Method method) {
  switch (method) {
    case Method::Cdt: return "cdt";
    case Method::Sdt: return "sdt";
    case Method::Tbd1: return "tbd1";
    case Method::Tbd2: return "tbd2";
    case Method::MmTbd1: return "mmtbd1";
    case Method::MmTbd2: return "mmtbd2";
  }
  throw std::logic_error("method_name: bad enum");
}

std::vector<std::string> method_names() {
  return {"cdt", "sdt", "tbd1", "tbd2", "mmtbd1", "mmtbd2"};
}

namespace {

const Detection* strongest(const std::vector<Detection>& dets) {
  const Detection* best = nullptr;
  for (const Detection& d : dets) {
    if (!best || d.statistic > best->statistic) best = &d;
  }
  return best;
}

/// CDT/SDT runs: detector emissions feed a PDA-MMPF track; a live track
/// counts as a declaration at its estimated cell, and is dropped after
/// max_coast_frames consecutive frames without a validated detection.
RunRecord run_detector_pipeline(const ScenarioConfig& scenario,
                                const MethodConfig& mc, std::uint64_t run_seed,
                                const std::vector<TruthPoint>& truth,
                                const std::vector<Frame>& frames,
                                RunStreams* streams) {
  const SensorConfig sensor = scenario.resolved_sensor();
  const double intensity = sensor.intensity;
  const double sigma = sensor.sigma;

  CdtConfig cdt_cfg;
  SdtConfig sdt_cfg;
  SdtState sdt_state;
  if (mc.method == Method::Cdt) {
    cdt_cfg = CdtConfig::from_p_fa(mc.cdt_p_fa, intensity, sigma);
  } else {
    sdt_cfg = SdtConfig::make(intensity, sigma, mc.sdt_alpha, mc.sdt_beta,
                              mc.sdt_p_fa_trunc, mc.sdt_s_m, mc.sdt_radius,
                              mc.sdt_seed_exceedance);
  }

  const ModeSet modes = ModeSet::default_two_mode(scenario.T);
  PdaConfig pda;
  pda.gate_radius = mc.pda_gate_radius;
  pda.pd_design = mc.pda_pd_design;
  pda.n_particles = mc.pda_n_particles;
  pda.max_coast_frames = mc.pda_max_coast_frames;
  pda.clutter_density = mc.method == Method::Cdt ? mc.cdt_p_fa : mc.sdt_p_fa_trunc;
  pda.measurement_sigma =
      std::max(sensor.delta_x, sensor.delta_y) / std::sqrt(12.0);

  Rng rng(derive_seed(run_seed, 2));

  RunRecord record;
  record.run_seed = run_seed;
  record.frames.resize(frames.size());

  std::optional<TrackerParticleSet> track;
  int coast = 0;
  // Reacquisition state: count far-from-track detections that are mutually
  // consistent in position (two-point confirmation before stealing a track).
  int stale = 0;
  double stale_x = 0.0, stale_y = 0.0;

  for (size_t k = 0; k < frames.size(); ++k) {
    const Frame& frame = frames[k];
    std::vector<Detection> dets = mc.method == Method::Cdt
                                      ? detect_frame(frame, cdt_cfg)
                                      : sdt_step(sdt_state, frame, sdt_cfg);
    if (streams) {
      streams->detections.insert(streams->detections.end(), dets.begin(),
                                 dets.end());
    }

    FrameRecord& rec = record.frames[k];
    rec.truth_present = truth[k].present;
    rec.truth = truth[k].state;
    const Detection* best = strongest(dets);

    if (track) {
      const TrackStepResult res =
          track_step(*track, dets, sensor, modes, pda, rng);
      coast = res.validated == 0 ? coast + 1 : 0;

      double nearest = std::numeric_limits<double>::infinity();
      for (const Detection& d : dets) {
        const auto [zx, zy] = cell_center(sensor, d.cell);
        nearest = std::min(nearest, std::hypot(zx - res.estimate.px,
                                               zy - res.estimate.py));
      }
      const Detection* reacquired = nullptr;
      if (!dets.empty()) {
        if (nearest <= 1.5) {
          stale = 0;
        } else {
          const auto [bx, by] = cell_center(sensor, best->cell);
          const bool consistent =
              stale > 0 && std::hypot(bx - stale_x, by - stale_y) <= 3.0;
          stale = consistent ? stale + 1 : 1;
          stale_x = bx;
          stale_y = by;
          if (stale >= 2) reacquired = best;
        }
      }

      if (reacquired) {
        // Two consistent detections away from the cloud: the track has lost
        // the object; restart on them.
        track = init_track(*reacquired, sensor, modes, pda, rng);
        coast = 0;
        stale = 0;
        rec.estimate = weighted_mean(track->particles);
      } else {
        rec.estimate = res.estimate;
        if (coast >= pda.max_coast_frames) track.reset();
      }
      rec.declared = true;
      rec.has_estimate = true;

      // Declare at the strongest detection the track actually explains;
      // otherwise at the estimate itself.
      const Detection* confirm = nullptr;
      for (const Detection& d : dets) {
        const auto [zx, zy] = cell_center(sensor, d.cell);
        if (std::hypot(zx - rec.estimate.px, zy - rec.estimate.py) <= 3.0 &&
            (!confirm || d.statistic > confirm->statistic)) {
          confirm = &d;
        }
      }
      rec.declared_cell =
          confirm ? confirm->cell
                  : cell_of(sensor, rec.estimate.px, rec.estimate.py);
      if (streams) {
        streams->estimates.push_back(
            {frame.frame_index, rec.estimate,
             track ? weighted_covariance(track->particles, rec.estimate).trace()
                   : res.covariance.trace()});
      }
    } else if (best) {
      track = init_track(*best, sensor, modes, pda, rng);
      coast = 0;
      stale = 0;
      rec.declared = true;
      rec.declared_cell = best->cell;
      rec.has_estimate = true;
      rec.estimate = weighted_mean(track->particles);
      if (streams) {
        streams->estimates.push_back(
            {frame.frame_index, rec.estimate,
             weighted_covariance(track->particles, rec.estimate).trace()});
      }
    }
  }
  return record;
}

RunRecord run_tbd_pipeline(const ScenarioConfig& scenario, const MethodConfig& mc,
                           std::uint64_t run_seed,
                           const std::vector<TruthPoint>& truth,
                           const std::vector<Frame>& frames,
                           RunStreams* streams) {
  const SensorConfig sensor = scenario.resolved_sensor();
  const bool multi_model =
      mc.method == Method::MmTbd1 || mc.method == Method::MmTbd2;
  const bool family1 = mc.method == Method::Tbd1 || mc.method == Method::MmTbd1;

  const ModeSet modes =
      multi_model ? ModeSet::default_two_mode(scenario.T)
                  : ModeSet::single(MotionModel::constant_velocity(scenario.T, 0.01));

  TbdConfig cfg;
  cfg.n_particles = mc.tbd_n_particles;
  cfg.declare_threshold = mc.tbd_declare_threshold;
  cfg.birth_threshold =
      sensor.sigma * normal_quantile(1.0 - mc.tbd_birth_exceedance);
  cfg.birth_velocity_std = mc.tbd_birth_velocity_std;

  Rng rng(derive_seed(run_seed, 2));

  RunRecord record;
  record.run_seed = run_seed;
  record.frames.resize(frames.size());

  TbdBelief2 belief2;
  Tbd1State state1;
  if (family1) {
    state1 = tbd1_init(mc.existence, cfg, sensor, modes, rng);
  } else {
    belief2 = tbd2_init(mc.existence, cfg, sensor, modes, rng);
  }

  for (size_t k = 0; k < frames.size(); ++k) {
    const Frame& frame = frames[k];
    double p_exist = 0.0;
    if (family1) {
      tbd1_step(state1, frame, mc.existence, modes, cfg, sensor, rng);
      p_exist = state1.p_exist;
    } else {
      tbd2_step(belief2, frame, mc.existence, modes, cfg, sensor, rng);
      p_exist = belief2.p_exist;
    }

    FrameRecord& rec = record.frames[k];
    rec.truth_present = truth[k].present;
    rec.truth = truth[k].state;
    rec.declared = tbd_declare(p_exist, cfg.declare_threshold);
    if (rec.declared) {
      rec.estimate = family1 ? tbd_estimate(state1) : tbd_estimate(belief2);
      rec.has_estimate = true;
      rec.declared_cell = cell_of(sensor, rec.estimate.px, rec.estimate.py);
    }
    if (streams) {
      streams->tbd.push_back(
          {frame.frame_index, p_exist, rec.declared, rec.estimate});
    }
  }
  return record;
}

}  // namespace

RunRecord run_one(const ScenarioConfig& scenario, const MethodConfig& mc,
                  std::uint64_t run_seed, RunStreams* streams) {
  scenario.validate();
  Rng scenario_rng(derive_seed(run_seed, 1));
  const std::vector<TruthPoint> truth = generate_trajectory(scenario, scenario_rng);
  const std::vector<Frame> frames = render_frames(scenario, truth, scenario_rng);

  switch (mc.method) {
    case Method::Cdt:
    case Method::Sdt:
      return run_detector_pipeline(scenario, mc, run_seed, truth, frames, streams);
    default:
      return run_tbd_pipeline(scenario, mc, run_seed, truth, frames, streams);
  }
}

std::vector<RunRecord> run_monte_carlo(const ScenarioConfig& scenario,
                                       const MethodConfig& mc, int n_runs,
                                       std::uint64_t master_seed, int jobs) {
  if (n_runs < 1) {
    throw std::invalid_argument("run_monte_carlo: n_runs must be >= 1");
  }
  scenario.validate();

  std::vector<RunRecord> records(n_runs);
  auto worker = [&](int start, int stride) {
    for (int i = start; i < n_runs; i += stride) {
      records[i] = run_one(scenario, mc, derive_seed(master_seed, i));
    }
  };

  const int threads = std::max(1, std::min(jobs, n_runs));
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

}  // namespace dimtrack
