#pragma once

#include <string>
#include <vector>

#include "dimtrack/campaign.hpp"
#include "dimtrack/metrics.hpp"
#include "dimtrack/scenario.hpp"

namespace dimtrack {

/// Metrics CSV schema: scenario,method,snr_db,frame,pd,rmse_pos,rmse_vel,
/// n_detected. Undefined RMSE values serialize as empty fields.
void write_metrics_csv(const std::string& path, const std::string& scenario,
                       const std::string& method, double snr_db,
                       const MetricSeries& series);

struct MetricsFile {
  std::string scenario;
  std::string method;
  double snr_db = 0.0;
  MetricSeries series;
};

MetricsFile read_metrics_csv(const std::string& path);

/// Comparison CSV schema: window,metric,mean_a,mean_b,delta,dominates.
void write_comparison_csv(const std::string& path, const ComparisonReport& rep);

/// Truth CSV schema: frame,present,px,vx,py,vy.
void write_truth_csv(const std::string& path, const std::vector<TruthPoint>& truth);

/// Frame dump schema: frame,i,j,value (one row per cell).
void write_frames_csv(const std::string& path, const std::vector<Frame>& frames);

/// Detection stream schema: frame,cell_i,cell_j,statistic,iterations,path.
/// The path column is f:i:j triplets joined by '|' (empty for CDT).
void write_detections_csv(const std::string& path,
                          const std::vector<Detection>& detections);

/// Estimate stream schema: frame,px,vx,py,vy,trace_cov.
void write_estimates_csv(const std::string& path,
                         const std::vector<RunStreams::EstimateRow>& rows);

/// TBD stream schema: frame,p_exist,declared,px,vx,py,vy.
void write_tbd_csv(const std::string& path,
                   const std::vector<RunStreams::TbdRow>& rows);

/// Shortest-width decimal formatting used by every writer (%.10g).
std::string format_value(double v);

}  // namespace dimtrack
