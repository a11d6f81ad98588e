#include "dimtrack/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dimtrack {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int common_length(const std::vector<RunRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("metrics: need at least one run record");
  }
  const size_t n = records.front().frames.size();
  for (const RunRecord& r : records) {
    if (r.frames.size() != n) {
      throw std::invalid_argument("metrics: run records differ in length");
    }
  }
  return static_cast<int>(n);
}

}  // namespace

bool declaration_correct(const FrameRecord& rec, const SensorConfig& sensor) {
  if (!rec.truth_present || !rec.declared) return false;
  const CellIndex truth_cell = cell_of(sensor, rec.truth.px, rec.truth.py);
  return chebyshev(rec.declared_cell, truth_cell) <= 1;
}

std::vector<double> detection_probability(const std::vector<RunRecord>& records,
                                          const SensorConfig& sensor) {
  const int n_frames = common_length(records);
  std::vector<double> pd(n_frames, 0.0);
  for (int k = 0; k < n_frames; ++k) {
    int hits = 0;
    for (const RunRecord& r : records) {
      const FrameRecord& rec = r.frames[k];
      if (rec.truth_present ? declaration_correct(rec, sensor) : rec.declared) {
        ++hits;
      }
    }
    pd[k] = static_cast<double>(hits) / static_cast<double>(records.size());
  }
  return pd;
}

std::pair<std::vector<double>, std::vector<double>> rmse_series(
    const std::vector<RunRecord>& records, const SensorConfig& sensor) {
  const int n_frames = common_length(records);
  std::vector<double> rmse_pos(n_frames, kNaN);
  std::vector<double> rmse_vel(n_frames, kNaN);
  for (int k = 0; k < n_frames; ++k) {
    double sq_pos = 0.0, sq_vel = 0.0;
    int count = 0;
    for (const RunRecord& r : records) {
      const FrameRecord& rec = r.frames[k];
      if (!rec.has_estimate || !declaration_correct(rec, sensor)) continue;
      const double ex = rec.estimate.px - rec.truth.px;
      const double ey = rec.estimate.py - rec.truth.py;
      const double evx = rec.estimate.vx - rec.truth.vx;
      const double evy = rec.estimate.vy - rec.truth.vy;
      sq_pos += ex * ex + ey * ey;
      sq_vel += evx * evx + evy * evy;
      ++count;
    }
    if (count > 0) {
      rmse_pos[k] = std::sqrt(sq_pos / count);
      rmse_vel[k] = std::sqrt(sq_vel / count);
    }
  }
  return {rmse_pos, rmse_vel};
}

MetricSeries compute_metrics(const std::vector<RunRecord>& records,
                             const SensorConfig& sensor) {
  const int n_frames = common_length(records);
  MetricSeries series;
  series.pd = detection_probability(records, sensor);
  std::tie(series.rmse_pos, series.rmse_vel) = rmse_series(records, sensor);
  series.object_present.resize(n_frames);
  series.n_detected.assign(n_frames, 0);
  for (int k = 0; k < n_frames; ++k) {
    series.object_present[k] = records.front().frames[k].truth_present;
    for (const RunRecord& r : records) {
      const FrameRecord& rec = r.frames[k];
      if (rec.has_estimate && declaration_correct(rec, sensor)) {
        ++series.n_detected[k];
      }
    }
  }
  return series;
}

double mean_pd(const MetricSeries& series, int window_lo, int window_hi) {
  if (window_lo < 1 || window_hi > series.n_frames() || window_lo > window_hi) {
    throw std::invalid_argument("mean_pd: window out of range");
  }
  double sum = 0.0;
  for (int k = window_lo; k <= window_hi; ++k) sum += series.pd[k - 1];
  return sum / (window_hi - window_lo + 1);
}

double mean_defined(const std::vector<double>& values, int window_lo,
                    int window_hi) {
  if (window_lo < 1 || window_hi > static_cast<int>(values.size()) ||
      window_lo > window_hi) {
    throw std::invalid_argument("mean_defined: window out of range");
  }
  double sum = 0.0;
  int count = 0;
  for (int k = window_lo; k <= window_hi; ++k) {
    if (!std::isnan(values[k - 1])) {
      sum += values[k - 1];
      ++count;
    }
  }
  return count > 0 ? sum / count : kNaN;
}

ComparisonReport compare(const MetricSeries& a, const MetricSeries& b,
                         int window_lo, int window_hi) {
  if (a.n_frames() != b.n_frames()) {
    throw std::invalid_argument("compare: series have different frame counts");
  }
  if (window_lo < 1 || window_hi > a.n_frames() || window_lo > window_hi) {
    throw std::invalid_argument("compare: window out of range");
  }
  ComparisonReport rep;
  rep.window_lo = window_lo;
  rep.window_hi = window_hi;
  rep.mean_pd_a = mean_pd(a, window_lo, window_hi);
  rep.mean_pd_b = mean_pd(b, window_lo, window_hi);

  // RMSE means over frames where both series are defined.
  double sa_pos = 0.0, sb_pos = 0.0, sa_vel = 0.0, sb_vel = 0.0;
  int n_pos = 0, n_vel = 0;
  for (int k = window_lo; k <= window_hi; ++k) {
    if (!std::isnan(a.rmse_pos[k - 1]) && !std::isnan(b.rmse_pos[k - 1])) {
      sa_pos += a.rmse_pos[k - 1];
      sb_pos += b.rmse_pos[k - 1];
      ++n_pos;
    }
    if (!std::isnan(a.rmse_vel[k - 1]) && !std::isnan(b.rmse_vel[k - 1])) {
      sa_vel += a.rmse_vel[k - 1];
      sb_vel += b.rmse_vel[k - 1];
      ++n_vel;
    }
  }
  rep.mean_rmse_pos_a = n_pos > 0 ? sa_pos / n_pos : kNaN;
  rep.mean_rmse_pos_b = n_pos > 0 ? sb_pos / n_pos : kNaN;
  rep.mean_rmse_vel_a = n_vel > 0 ? sa_vel / n_vel : kNaN;
  rep.mean_rmse_vel_b = n_vel > 0 ? sb_vel / n_vel : kNaN;

  rep.dominates_pd = rep.mean_pd_a > rep.mean_pd_b;
  rep.dominates_rmse_pos = n_pos > 0 && rep.mean_rmse_pos_a < rep.mean_rmse_pos_b;
  rep.dominates_rmse_vel = n_vel > 0 && rep.mean_rmse_vel_a < rep.mean_rmse_vel_b;
  return rep;
}

}  // namespace dimtrack
