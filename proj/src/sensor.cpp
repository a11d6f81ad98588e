#include "dimtrack/sensor.hpp"

#include <cmath>
#include <stdexcept>

namespace dimtrack {

void SensorConfig::validate() const {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("SensorConfig: grid must be at least 1x1");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("SensorConfig: sigma must be > 0");
  }
  if (!(delta_x > 0.0) || !(delta_y > 0.0)) {
    throw std::invalid_argument("SensorConfig: cell dimensions must be > 0");
  }
  if (intensity < 0.0 || !std::isfinite(intensity)) {
    throw std::invalid_argument("SensorConfig: intensity must be finite and >= 0");
  }
  if (blur < 0.0) {
    throw std::invalid_argument("SensorConfig: blur must be >= 0");
  }
}

double snr_to_intensity(double snr_db, double sigma) {
  if (!std::isfinite(snr_db) || !(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("snr_to_intensity: need finite snr_db and sigma > 0");
  }
  return sigma * std::pow(10.0, snr_db / 20.0);
}

double intensity_to_snr_db(double intensity, double sigma) {
  if (!(intensity > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("intensity_to_snr_db: need intensity, sigma > 0");
  }
  return 20.0 * std::log10(intensity / sigma);
}

CellIndex cell_of(const SensorConfig& sensor, double px, double py) {
  return {static_cast<int>(std::ceil(px / sensor.delta_x)),
          static_cast<int>(std::ceil(py / sensor.delta_y))};
}

bool in_grid(const SensorConfig& sensor, CellIndex c) {
  return c.i >= 1 && c.i <= sensor.rows && c.j >= 1 && c.j <= sensor.cols;
}

std::pair<double, double> cell_center(const SensorConfig& sensor, CellIndex c) {
  return {(c.i - 0.5) * sensor.delta_x, (c.j - 0.5) * sensor.delta_y};
}

Frame render_frame(const std::optional<StateVector>& truth,
                   const SensorConfig& sensor, int frame_index, Rng& rng,
                   SimEvents* events) {
  sensor.validate();
  Frame frame(sensor.rows, sensor.cols, frame_index);
  for (double& z : frame.cells) z = rng.normal(0.0, sensor.sigma);

  if (!truth) return frame;

  const CellIndex occupied = cell_of(sensor, truth->px, truth->py);
  if (!in_grid(sensor, occupied)) {
    if (events) ++events->off_grid_frames;
    return frame;
  }

  if (sensor.blur <= 0.0) {
    frame.at(occupied) += sensor.intensity;
    return frame;
  }

  // Gaussian point spread sampled at the grid points (i*dx, j*dy).
  const double s2 = sensor.blur * sensor.blur;
  const double gain = sensor.delta_x * sensor.delta_y * sensor.intensity /
                      (2.0 * M_PI * s2);
  for (int i = 1; i <= sensor.rows; ++i) {
    const double dx = i * sensor.delta_x - truth->px;
    for (int j = 1; j <= sensor.cols; ++j) {
      const double dy = j * sensor.delta_y - truth->py;
      frame.at({i, j}) += gain * std::exp(-(dx * dx + dy * dy) / (2.0 * s2));
    }
  }
  return frame;
}

}  // namespace dimtrack
