#include "dimtrack/sdt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dimtrack/mathx.hpp"

namespace dimtrack {

SdtConfig SdtConfig::make(double intensity, double sigma, double alpha,
                          double beta, double p_fa_trunc, int s_m, int radius,
                          double seed_exceedance) {
  SdtConfig cfg;
  cfg.alpha = alpha;
  cfg.beta = beta;
  std::tie(cfg.th1, cfg.th2) = wald_thresholds(alpha, beta);
  cfg.s_m = s_m;
  cfg.radius = radius;
  cfg.intensity = intensity;
  cfg.sigma = sigma;
  cfg.tau = truncated_tau(s_m, sigma, p_fa_trunc);
  if (!(seed_exceedance > 0.0 && seed_exceedance < 1.0)) {
    throw std::invalid_argument("SdtConfig: seed exceedance must be in (0, 1)");
  }
  cfg.seed_threshold = sigma * normal_quantile(1.0 - seed_exceedance);
  return cfg;
}

void SdtConfig::validate() const {
  if (!(th1 > 0.0 && th1 < 1.0 && th2 > 1.0)) {
    throw std::invalid_argument("SdtConfig: need 0 < th1 < 1 < th2");
  }
  if (s_m < 1 || radius < 1) {
    throw std::invalid_argument("SdtConfig: need s_m >= 1 and radius >= 1");
  }
  if (!(intensity > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("SdtConfig: need intensity > 0 and sigma > 0");
  }
}

std::pair<double, double> wald_thresholds(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("wald_thresholds: alpha, beta must be in (0, 1)");
  }
  const double th1 = beta / (1.0 - alpha);
  const double th2 = (1.0 - beta) / alpha;
  if (!(th1 > 0.0 && th1 < 1.0 && th2 > 1.0)) {
    throw std::invalid_argument(
        "wald_thresholds: degenerate (alpha, beta), need 0 < th1 < 1 < th2");
  }
  return {th1, th2};
}

std::pair<double, double> thresholds_for_iteration(const SdtConfig& cfg, int M) {
  if (!(cfg.intensity > 0.0)) {
    throw std::invalid_argument("thresholds_for_iteration: intensity must be > 0");
  }
  if (M < 1) {
    throw std::invalid_argument("thresholds_for_iteration: M must be >= 1");
  }
  const double scale = cfg.sigma * cfg.sigma / cfg.intensity;
  const double drift = M * cfg.intensity / 2.0;
  return {scale * std::log(cfg.th1) + drift, scale * std::log(cfg.th2) + drift};
}

double truncated_tau(int s_m, double sigma, double p_fa_trunc) {
  if (s_m < 1 || !(sigma > 0.0)) {
    throw std::invalid_argument("truncated_tau: need s_m >= 1 and sigma > 0");
  }
  if (!(p_fa_trunc > 0.0 && p_fa_trunc < 1.0)) {
    throw std::invalid_argument("truncated_tau: p_fa_trunc must be in (0, 1)");
  }
  return std::sqrt(static_cast<double>(s_m)) * sigma *
         normal_quantile(1.0 - p_fa_trunc);
}

SprtDecision sprt_decide(const TrackHypothesis& hyp, const SdtConfig& cfg) {
  const int M = hyp.iteration();
  if (M >= cfg.s_m) {
    return hyp.sum_stat > cfg.tau ? SprtDecision::AcceptH1 : SprtDecision::AcceptH0;
  }
  const auto [lo, hi] = thresholds_for_iteration(cfg, M);
  if (hyp.sum_stat > hi) return SprtDecision::AcceptH1;
  if (hyp.sum_stat < lo) return SprtDecision::AcceptH0;
  return SprtDecision::Continue;
}

bool SdtState::is_used(int rows, int cols, CellIndex c) const {
  if (used.size() != static_cast<size_t>(rows) * cols) return false;
  return used[static_cast<size_t>(c.i - 1) * cols + (c.j - 1)] != 0;
}

std::vector<TrackHypothesis> seed_candidates(const Frame& frame,
                                             const SdtState& state,
                                             const SdtConfig& cfg) {
  std::vector<TrackHypothesis> seeds;
  for (int i = 1; i <= frame.rows; ++i) {
    for (int j = 1; j <= frame.cols; ++j) {
      const CellIndex c{i, j};
      const double z = frame.at(c);
      if (z > cfg.seed_threshold && !state.is_used(frame.rows, frame.cols, c)) {
        TrackHypothesis h;
        h.path = {{frame.frame_index, c}};
        h.sum_stat = z;
        seeds.push_back(std::move(h));
      }
    }
  }
  return seeds;
}

std::vector<TrackHypothesis> expand_hypotheses(SdtState& state,
                                               const Frame& frame,
                                               const SdtConfig& cfg) {
  if (state.used.size() != static_cast<size_t>(frame.rows) * frame.cols) {
    state.used.assign(static_cast<size_t>(frame.rows) * frame.cols, 0);
  }
  std::vector<TrackHypothesis> children;
  children.reserve(state.active.size() * (2 * cfg.radius + 1) * (2 * cfg.radius + 1));
  for (const TrackHypothesis& h : state.active) {
    const CellIndex c = h.terminal();
    for (int di = -cfg.radius; di <= cfg.radius; ++di) {
      for (int dj = -cfg.radius; dj <= cfg.radius; ++dj) {
        const CellIndex n{c.i + di, c.j + dj};
        if (!frame.in_bounds(n)) continue;
        state.used[static_cast<size_t>(n.i - 1) * frame.cols + (n.j - 1)] = 1;
        TrackHypothesis child;
        child.path = h.path;
        child.path.push_back({frame.frame_index, n});
        child.sum_stat = h.sum_stat + frame.at(n);
        children.push_back(std::move(child));
      }
    }
  }
  return children;
}

namespace {

std::int64_t path_key(int cols, const PathCell& p) {
  return static_cast<std::int64_t>(p.frame) * (1 << 20) +
         static_cast<std::int64_t>(p.cell.i - 1) * cols + (p.cell.j - 1);
}

bool overlaps(const std::unordered_set<std::int64_t>& taken, int cols,
              const TrackHypothesis& h) {
  for (const PathCell& p : h.path) {
    if (taken.count(path_key(cols, p))) return true;
  }
  return false;
}

}  // namespace

std::vector<Detection> sdt_step(SdtState& state, const Frame& frame,
                                const SdtConfig& cfg) {
  cfg.validate();
  if (state.started && frame.frame_index != state.last_frame + 1) {
    throw std::runtime_error("sdt_step: frames must arrive in consecutive order");
  }
  state.started = true;
  state.last_frame = frame.frame_index;
  state.used.assign(static_cast<size_t>(frame.rows) * frame.cols, 0);

  std::vector<TrackHypothesis> hypotheses = expand_hypotheses(state, frame, cfg);
  std::vector<TrackHypothesis> seeds = seed_candidates(frame, state, cfg);
  hypotheses.insert(hypotheses.end(), std::make_move_iterator(seeds.begin()),
                    std::make_move_iterator(seeds.end()));

  std::vector<TrackHypothesis> accepted;
  std::vector<TrackHypothesis> continuing;
  for (TrackHypothesis& h : hypotheses) {
    switch (sprt_decide(h, cfg)) {
      case SprtDecision::AcceptH1:
        accepted.push_back(std::move(h));
        break;
      case SprtDecision::Continue:
        continuing.push_back(std::move(h));
        break;
      case SprtDecision::AcceptH0:
        break;
    }
  }

  // Strongest hypothesis wins; anything sharing a path cell with a winner is
  // redundant under the single-object assumption.
  std::sort(accepted.begin(), accepted.end(),
            [](const TrackHypothesis& a, const TrackHypothesis& b) {
              if (a.sum_stat != b.sum_stat) return a.sum_stat > b.sum_stat;
              const CellIndex ca = a.terminal(), cb = b.terminal();
              if (ca.i != cb.i) return ca.i < cb.i;
              if (ca.j != cb.j) return ca.j < cb.j;
              return a.iteration() < b.iteration();
            });
  std::vector<Detection> detections;
  std::unordered_set<std::int64_t> taken;
  for (TrackHypothesis& h : accepted) {
    if (overlaps(taken, frame.cols, h)) continue;
    for (const PathCell& p : h.path) taken.insert(path_key(frame.cols, p));
    Detection d;
    d.frame_index = frame.frame_index;
    d.cell = h.terminal();
    d.statistic = h.sum_stat;
    d.source = DetectorSource::Sdt;
    d.path = std::move(h.path);
    detections.push_back(std::move(d));
  }

  // Merge survivors that agree on (terminal cell, iteration), keeping the
  // larger sum; caps the branching blowup at rows * cols * s_m.
  std::unordered_map<std::int64_t, size_t> best;
  std::vector<TrackHypothesis> merged;
  for (TrackHypothesis& h : continuing) {
    if (!taken.empty() && overlaps(taken, frame.cols, h)) continue;
    const CellIndex c = h.terminal();
    const std::int64_t key =
        (static_cast<std::int64_t>(c.i - 1) * frame.cols + (c.j - 1)) *
            (cfg.s_m + 1) +
        h.iteration();
    auto [it, inserted] = best.try_emplace(key, merged.size());
    if (inserted) {
      merged.push_back(std::move(h));
    } else if (h.sum_stat > merged[it->second].sum_stat) {
      merged[it->second] = std::move(h);
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const TrackHypothesis& a, const TrackHypothesis& b) {
              if (a.iteration() != b.iteration()) return a.iteration() < b.iteration();
              const CellIndex ca = a.terminal(), cb = b.terminal();
              if (ca.i != cb.i) return ca.i < cb.i;
              return ca.j < cb.j;
            });
  state.active = std::move(merged);
  return detections;
}

}  // namespace dimtrack
