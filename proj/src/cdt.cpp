#include "dimtrack/cdt.hpp"

#include <cmath>
#include <stdexcept>

#include "dimtrack/mathx.hpp"

namespace dimtrack {

CdtConfig CdtConfig::from_p_fa(double p_fa, double intensity, double sigma) {
  CdtConfig cfg;
  cfg.p_fa = p_fa;
  cfg.intensity = intensity;
  cfg.sigma = sigma;
  cfg.threshold = cdt_threshold(p_fa, sigma);
  return cfg;
}

double cell_likelihood_ratio(double z, double intensity, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("cell_likelihood_ratio: sigma must be > 0");
  }
  return std::exp(-intensity * (intensity - 2.0 * z) / (2.0 * sigma * sigma));
}

double cdt_threshold(double p_fa, double sigma) {
  if (!(p_fa > 0.0 && p_fa < 1.0)) {
    throw std::invalid_argument("cdt_threshold: p_fa must be in (0, 1)");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("cdt_threshold: sigma must be > 0");
  }
  return sigma * normal_quantile(1.0 - p_fa);
}

double cdt_lr_threshold(const CdtConfig& cfg) {
  return std::exp(cfg.intensity * (2.0 * cfg.threshold - cfg.intensity) /
                  (2.0 * cfg.sigma * cfg.sigma));
}

std::vector<Detection> detect_frame(const Frame& frame, const CdtConfig& cfg) {
  std::vector<Detection> detections;
  for (int i = 1; i <= frame.rows; ++i) {
    for (int j = 1; j <= frame.cols; ++j) {
      const double z = frame.at({i, j});
      if (z > cfg.threshold) {
        Detection d;
        d.frame_index = frame.frame_index;
        d.cell = {i, j};
        d.statistic = z;
        d.source = DetectorSource::Cdt;
        detections.push_back(std::move(d));
      }
    }
  }
  return detections;
}

}  // namespace dimtrack
