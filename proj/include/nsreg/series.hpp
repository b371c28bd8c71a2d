#pragma once

#include <filesystem>
#include <vector>

#include "nsreg/field.hpp"

namespace nsreg {

struct Snapshot {
  double time;
  VectorField3 velocity;
  ScalarField3 pressure;
};

/// Time-ordered (velocity, pressure) snapshots on one grid.
/// Invariants: nonempty, strictly increasing times, every field on `grid`.
class SnapshotSeries {
 public:
  SnapshotSeries(const Grid3& grid, std::vector<Snapshot> snapshots);

  const Grid3& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return snapshots_.size(); }
  const Snapshot& operator[](std::size_t i) const noexcept { return snapshots_[i]; }
  const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }
  std::vector<double> times() const;
  double first_time() const noexcept { return snapshots_.front().time; }
  double last_time() const noexcept { return snapshots_.back().time; }

  /// Index of the snapshot whose time equals t (within 1e-12 relative), or -1.
  long find_time(double t) const noexcept;

 private:
  Grid3 grid_;
  std::vector<Snapshot> snapshots_;
};

/// Q_r(z) = B_r(x) x (t - r^2, t).
struct ParabolicCylinder {
  Point3 center;
  double time;
  double radius;

  Ball ball() const { return Ball(center, radius); }
  double window_start() const noexcept { return time - radius * radius; }
};

/// Reads an NSF1 file. Throws FormatError naming the offending header field,
/// ValidationError on empty or non-increasing series, IoError on read failure.
SnapshotSeries load_series(const std::filesystem::path& path);

/// Writes an NSF1 file (little-endian, bit-exact round trip with load_series).
void save_series(const SnapshotSeries& series, const std::filesystem::path& path);

}  // namespace nsreg
