#include "nsreg/grid.hpp"

#include <cmath>
#include <string>

#include "nsreg/error.hpp"

namespace nsreg {

Axis axis_from_number(int axis) {
  if (axis < 1 || axis > 3) {
    throw ValidationError("axis must be 1, 2 or 3, got " + std::to_string(axis));
  }
  return static_cast<Axis>(axis - 1);
}

Grid3::Grid3(int n, double box_len) : n_(n), box_len_(box_len) {
  if (n < 4) {
    throw ValidationError("grid resolution n must be >= 4, got " + std::to_string(n));
  }
  if (!std::isfinite(box_len) || box_len <= 0.0) {
    throw ValidationError("box_len must be a positive finite number");
  }
}

double Grid3::periodic_delta(double a, double b) const noexcept {
  double d = a - b;
  d -= box_len_ * std::nearbyint(d / box_len_);
  return d;
}

double Grid3::periodic_distance(const Point3& a, const Point3& b) const noexcept {
  const double dx = periodic_delta(a[0], b[0]);
  const double dy = periodic_delta(a[1], b[1]);
  const double dz = periodic_delta(a[2], b[2]);
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Ball::Ball(Point3 center, double radius) : center_(center), radius_(radius) {
  for (double c : center_) {
    if (!std::isfinite(c)) throw ValidationError("ball center must be finite");
  }
  if (!std::isfinite(radius) || radius <= 0.0) {
    throw ValidationError("ball radius must be positive and finite");
  }
}

void require_ball_fits(const Grid3& grid, const Ball& ball, double max_fraction) {
  if (ball.radius() > max_fraction * grid.box_len() * (1.0 + 1e-12)) {
    throw ValidationError("ball radius " + std::to_string(ball.radius()) + " exceeds " +
                          std::to_string(max_fraction) + " * box_len = " +
                          std::to_string(max_fraction * grid.box_len()));
  }
}

std::vector<std::size_t> ball_indices(const Grid3& grid, const Ball& ball) {
  require_ball_fits(grid, ball);
  const int n = grid.n();
  const double h = grid.spacing();
  const double r = ball.radius();
  const double r2 = r * r;
  std::vector<std::size_t> out;
  // Per-axis minimum-image offsets, reused across the triple loop.
  std::vector<double> d[3];
  for (int a = 0; a < 3; ++a) {
    d[a].resize(n);
    for (int i = 0; i < n; ++i) d[a][i] = grid.periodic_delta(i * h, ball.center()[a]);
  }
  for (int i = 0; i < n; ++i) {
    const double dx2 = d[0][i] * d[0][i];
    if (dx2 >= r2) continue;
    for (int j = 0; j < n; ++j) {
      const double dxy2 = dx2 + d[1][j] * d[1][j];
      if (dxy2 >= r2) continue;
      for (int k = 0; k < n; ++k) {
        if (dxy2 + d[2][k] * d[2][k] < r2) out.push_back(grid.index(i, j, k));
      }
    }
  }
  return out;
}

}  // namespace nsreg
