#pragma once

#include <vector>

#include "dimtrack/types.hpp"

namespace dimtrack {

/// One-frame, per-cell likelihood-ratio detector. Parameterized by the
/// per-cell false-alarm probability under the noise-only hypothesis; the
/// intensity threshold is derived from it.
struct CdtConfig {
  double p_fa = 1e-4;
  double intensity = 1.0;
  double sigma = 1.0;
  double threshold = 0.0;  // th' in measurement units

  static CdtConfig from_p_fa(double p_fa, double intensity, double sigma);
};

/// Likelihood ratio of one cell measurement, object-present over noise-only:
/// exp(-I (I - 2 z) / (2 sigma^2)). Strictly increasing in z for I > 0.
double cell_likelihood_ratio(double z, double intensity, double sigma);

/// Intensity threshold th' with Pr{z > th' | noise only} == p_fa,
/// i.e. sigma * Phi^-1(1 - p_fa).
double cdt_threshold(double p_fa, double sigma);

/// LR-domain threshold equivalent to cfg.threshold:
/// z > th'  <=>  cell_likelihood_ratio(z) > cdt_lr_threshold(cfg).
double cdt_lr_threshold(const CdtConfig& cfg);

/// All cells with z > cfg.threshold. Single-object arbitration (keeping the
/// max-statistic cell) is the evaluator's job, not the detector's.
std::vector<Detection> detect_frame(const Frame& frame, const CdtConfig& cfg);

}  // namespace dimtrack
