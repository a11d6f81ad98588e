#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dimtrack/types.hpp"

namespace dimtrack {

/// Truncated two-threshold sequential test over drifting-cell track
/// hypotheses. th1/th2 bound the likelihood ratio; tau decides at the
/// truncation depth s_m; seed_threshold admits first-iteration candidate
/// cells; radius bounds cell movement per frame.
struct SdtConfig {
  double alpha = 0.01;
  double beta = 0.05;
  double th1 = 0.0;
  double th2 = 0.0;
  int s_m = 3;
  double tau = 0.0;
  double seed_threshold = 0.0;
  int radius = 1;
  double intensity = 1.0;
  double sigma = 1.0;

  /// Builds a config from design rates: Wald thresholds from (alpha, beta),
  /// tau from the truncated-test false-alarm probability, seed threshold
  /// from its noise exceedance probability.
  static SdtConfig make(double intensity, double sigma, double alpha,
                        double beta, double p_fa_trunc, int s_m, int radius,
                        double seed_exceedance);

  void validate() const;
};

/// Candidate cell path with its accumulated sum statistic. The path moves at
/// most `radius` cells (Chebyshev) per frame and has length == iteration.
struct TrackHypothesis {
  std::vector<PathCell> path;
  double sum_stat = 0.0;

  int iteration() const { return static_cast<int>(path.size()); }
  CellIndex terminal() const { return path.back().cell; }
};

enum class SprtDecision { AcceptH1, AcceptH0, Continue };

/// Sequential-detector state across frames. `used` marks cells of the
/// current frame already consumed by hypothesis extension; it resets every
/// frame.
struct SdtState {
  std::vector<TrackHypothesis> active;
  std::vector<std::uint8_t> used;  // row-major, current frame only
  int last_frame = 0;
  bool started = false;

  bool is_used(int rows, int cols, CellIndex c) const;
};

/// Wald approximations th1 = beta/(1-alpha), th2 = (1-beta)/alpha.
/// Throws unless the result satisfies 0 < th1 < 1 < th2.
std::pair<double, double> wald_thresholds(double alpha, double beta);

/// Sum-statistic thresholds equivalent to the LR thresholds at iteration M:
/// th'_j(M) = (sigma^2 / I) ln(th_j) + M I / 2.
std::pair<double, double> thresholds_for_iteration(const SdtConfig& cfg, int M);

/// Truncated-test threshold with Pr{T_{s_m} > tau | noise only, fixed path}
/// == p_fa_trunc; the fixed-path sum is N(0, s_m sigma^2) under noise.
double truncated_tau(int s_m, double sigma, double p_fa_trunc);

/// Three-way decision below the truncation depth, two-way at it. Ties at a
/// threshold resolve to Continue (below s_m) and AcceptH0 (at s_m).
SprtDecision sprt_decide(const TrackHypothesis& hyp, const SdtConfig& cfg);

/// New single-cell hypotheses: one per cell exceeding seed_threshold that no
/// extension has touched this frame.
std::vector<TrackHypothesis> seed_candidates(const Frame& frame,
                                             const SdtState& state,
                                             const SdtConfig& cfg);

/// Children of every active hypothesis over the Chebyshev-radius
/// neighborhood of its terminal cell, clipped to the grid. Marks all
/// neighborhood cells as used for this frame.
std::vector<TrackHypothesis> expand_hypotheses(SdtState& state,
                                               const Frame& frame,
                                               const SdtConfig& cfg);

/// One full sequential-detection step: extend survivors, seed fresh cells,
/// decide every hypothesis, emit detections, prune and merge. Frames must
/// arrive in consecutive index order.
std::vector<Detection> sdt_step(SdtState& state, const Frame& frame,
                                const SdtConfig& cfg);

}  // namespace dimtrack
