#pragma once

#include <vector>

#include "dimtrack/scenario.hpp"
#include "dimtrack/types.hpp"

namespace dimtrack {

/// Per-frame outcome of one Monte Carlo run.
struct FrameRecord {
  bool truth_present = false;
  StateVector truth;
  bool declared = false;
  CellIndex declared_cell;
  bool has_estimate = false;
  StateVector estimate;
};

struct RunRecord {
  std::uint64_t run_seed = 0;
  std::vector<FrameRecord> frames;  // index k-1 holds frame k
};

/// Per-frame detection probability and detection-conditioned RMSE curves.
/// rmse values are NaN where n_detected is zero; pd on frames without an
/// object is the false-alarm trace (fraction of runs declaring anything).
struct MetricSeries {
  std::vector<bool> object_present;
  std::vector<double> pd;
  std::vector<double> rmse_pos;
  std::vector<double> rmse_vel;
  std::vector<int> n_detected;

  int n_frames() const { return static_cast<int>(pd.size()); }
};

/// A declaration is correct when the declared cell is within Chebyshev
/// distance 1 of the cell occupied by the truth state.
bool declaration_correct(const FrameRecord& rec, const SensorConfig& sensor);

std::vector<double> detection_probability(const std::vector<RunRecord>& records,
                                          const SensorConfig& sensor);

/// Position/velocity RMSE over runs with a correct declaration and an
/// estimate at that frame; NaN where no run contributes.
std::pair<std::vector<double>, std::vector<double>> rmse_series(
    const std::vector<RunRecord>& records, const SensorConfig& sensor);

MetricSeries compute_metrics(const std::vector<RunRecord>& records,
                             const SensorConfig& sensor);

/// Windowed comparison of two metric series on the same scenario. RMSE means
/// run over frames where both series are defined.
struct ComparisonReport {
  int window_lo = 0;
  int window_hi = 0;
  double mean_pd_a = 0.0, mean_pd_b = 0.0;
  double mean_rmse_pos_a = 0.0, mean_rmse_pos_b = 0.0;
  double mean_rmse_vel_a = 0.0, mean_rmse_vel_b = 0.0;
  bool dominates_pd = false;        // a strictly higher mean pd
  bool dominates_rmse_pos = false;  // a strictly lower mean rmse
  bool dominates_rmse_vel = false;
};

ComparisonReport compare(const MetricSeries& a, const MetricSeries& b,
                         int window_lo, int window_hi);

/// Mean of pd over frames window_lo..window_hi (1-based, inclusive).
double mean_pd(const MetricSeries& series, int window_lo, int window_hi);

/// Mean of an rmse series over defined frames in the window; NaN if none.
double mean_defined(const std::vector<double>& values, int window_lo,
                    int window_hi);

}  // namespace dimtrack
