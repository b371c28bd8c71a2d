#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace nsreg {

using Point3 = std::array<double, 3>;

enum class Axis : int { x = 0, y = 1, z = 2 };

/// Maps a 1-based axis number (1, 2, 3) to Axis; throws ValidationError otherwise.
Axis axis_from_number(int axis);

/// Periodic cubic grid [0, L)^3 sampled at n points per axis.
class Grid3 {
 public:
  Grid3(int n, double box_len);

  int n() const noexcept { return n_; }
  double box_len() const noexcept { return box_len_; }
  double spacing() const noexcept { return box_len_ / n_; }
  double cell_volume() const noexcept {
    const double h = spacing();
    return h * h * h;
  }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }

  /// Row-major linear index, axis order x, y, z. Indices wrap modulo n.
  std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(wrap(i)) * n_ + static_cast<std::size_t>(wrap(j))) * n_ +
           static_cast<std::size_t>(wrap(k));
  }
  int wrap(int i) const noexcept {
    const int m = i % n_;
    return m < 0 ? m + n_ : m;
  }
  Point3 coord(int i, int j, int k) const noexcept {
    const double h = spacing();
    return {i * h, j * h, k * h};
  }

  /// Minimum-image displacement from b to a along one axis.
  double periodic_delta(double a, double b) const noexcept;
  /// Minimum-image Euclidean distance on the torus.
  double periodic_distance(const Point3& a, const Point3& b) const noexcept;

  friend bool operator==(const Grid3& a, const Grid3& b) noexcept {
    return a.n_ == b.n_ && a.box_len_ == b.box_len_;
  }

 private:
  int n_;
  double box_len_;
};

/// Open ball B_r(x) in periodic coordinates.
class Ball {
 public:
  Ball(Point3 center, double radius);

  const Point3& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

  Ball scaled(double factor) const { return Ball(center_, radius_ * factor); }

 private:
  Point3 center_;
  double radius_;
};

/// Throws ValidationError unless the ball's radius is at most max_fraction * box_len.
void require_ball_fits(const Grid3& grid, const Ball& ball, double max_fraction = 0.5);

/// Linear indices of the grid points strictly inside the ball (periodic distance < radius),
/// in increasing order.
std::vector<std::size_t> ball_indices(const Grid3& grid, const Ball& ball);

}  // namespace nsreg
