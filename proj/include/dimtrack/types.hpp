#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace dimtrack {

/// 1-based grid cell index, i along x (1..n), j along y (1..m).
struct CellIndex {
  int i = 0;
  int j = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

inline int chebyshev(CellIndex a, CellIndex b) {
  return std::max(std::abs(a.i - b.i), std::abs(a.j - b.j));
}

/// Kinematic state [px, vx, py, vy]; positions in cell-width units,
/// velocities in cells per frame period.
struct StateVector {
  double px = 0.0;
  double vx = 0.0;
  double py = 0.0;
  double vy = 0.0;

  bool finite() const {
    return std::isfinite(px) && std::isfinite(vx) && std::isfinite(py) &&
           std::isfinite(vy);
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

/// One frame of cell intensities, row-major over (i, j).
struct Frame {
  int rows = 0;
  int cols = 0;
  int frame_index = 0;
  std::vector<double> cells;

  Frame() = default;
  Frame(int n, int m, int index)
      : rows(n), cols(m), frame_index(index), cells(static_cast<size_t>(n) * m, 0.0) {}

  bool in_bounds(CellIndex c) const {
    return c.i >= 1 && c.i <= rows && c.j >= 1 && c.j <= cols;
  }

  double& at(CellIndex c) { return cells[static_cast<size_t>(c.i - 1) * cols + (c.j - 1)]; }
  double at(CellIndex c) const {
    return cells[static_cast<size_t>(c.i - 1) * cols + (c.j - 1)];
  }
};

enum class DetectorSource { Cdt, Sdt };

struct PathCell {
  int frame = 0;
  CellIndex cell;

  friend bool operator==(const PathCell&, const PathCell&) = default;
};

/// Detector output handed to the tracker. `path` is empty for CDT; for SDT it
/// is the accumulated cell path ending at `cell`.
struct Detection {
  int frame_index = 0;
  CellIndex cell;
  double statistic = 0.0;
  DetectorSource source = DetectorSource::Cdt;
  std::vector<PathCell> path;

  int iterations() const { return path.empty() ? 1 : static_cast<int>(path.size()); }
};

}  // namespace dimtrack
