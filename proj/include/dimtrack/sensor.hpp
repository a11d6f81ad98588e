#pragma once

#include <optional>
#include <utility>

#include "dimtrack/rng.hpp"
#include "dimtrack/types.hpp"

namespace dimtrack {

/// Pixel-grid sensor: n x m cells of size delta_x x delta_y, per-cell
/// additive N(0, sigma^2) noise, point object of intensity `intensity`.
/// blur > 0 enables the Gaussian point-spread form when rendering; the
/// detectors always assume the no-blur model.
struct SensorConfig {
  int rows = 20;
  int cols = 20;
  double delta_x = 1.0;
  double delta_y = 1.0;
  double intensity = 1.0;
  double sigma = 1.0;
  double blur = 0.0;

  void validate() const;

  friend bool operator==(const SensorConfig&, const SensorConfig&) = default;
};

/// Intensity I with 10*log10(I^2 / sigma^2) == snr_db.
double snr_to_intensity(double snr_db, double sigma);

double intensity_to_snr_db(double intensity, double sigma);

/// Cell containing a continuous position: 1-based ceiling of position over
/// cell size. The result may lie outside the grid; callers check in_grid.
CellIndex cell_of(const SensorConfig& sensor, double px, double py);

bool in_grid(const SensorConfig& sensor, CellIndex c);

/// Midpoint of the cell's footprint ((i-1)*dx, i*dx] x ((j-1)*dy, j*dy].
std::pair<double, double> cell_center(const SensorConfig& sensor, CellIndex c);

struct SimEvents {
  long off_grid_frames = 0;
};

/// One measurement frame: noise everywhere, plus the object signal when
/// `truth` is set and maps to an in-grid cell. An in-presence state outside
/// the grid renders as pure noise and bumps events->off_grid_frames.
Frame render_frame(const std::optional<StateVector>& truth,
                   const SensorConfig& sensor, int frame_index, Rng& rng,
                   SimEvents* events = nullptr);

}  // namespace dimtrack
