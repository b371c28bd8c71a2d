#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "nsreg/grid.hpp"

namespace nsreg {

/// Real scalar samples on a Grid3, row-major x,y,z. Values are always finite.
class ScalarField3 {
 public:
  /// Zero field.
  explicit ScalarField3(const Grid3& grid);
  /// Takes ownership of values; throws ValidationError on size mismatch or non-finite entries.
  ScalarField3(const Grid3& grid, std::vector<double> values);

  /// Samples fn(x, y, z) at every grid point.
  static ScalarField3 from_function(const Grid3& grid,
                                    const std::function<double(double, double, double)>& fn);
  static ScalarField3 constant(const Grid3& grid, double c);

  const Grid3& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double at(int i, int j, int k) const noexcept { return values_[grid_.index(i, j, k)]; }

  double mean() const noexcept;
  double max_abs() const noexcept;

  ScalarField3& operator+=(const ScalarField3& o);
  ScalarField3& operator-=(const ScalarField3& o);
  ScalarField3& operator*=(double c);

  friend ScalarField3 operator+(ScalarField3 a, const ScalarField3& b) { return a += b; }
  friend ScalarField3 operator-(ScalarField3 a, const ScalarField3& b) { return a -= b; }
  friend ScalarField3 operator*(ScalarField3 a, double c) { return a *= c; }
  friend ScalarField3 operator*(double c, ScalarField3 a) { return a *= c; }

  /// Throws ValidationError if any value is NaN or infinite.
  void require_finite(const char* what = "field") const;

 private:
  Grid3 grid_;
  std::vector<double> values_;
};

/// Pointwise product.
ScalarField3 multiply(const ScalarField3& a, const ScalarField3& b);
/// Pointwise absolute value.
ScalarField3 abs(const ScalarField3& f);

/// Three scalar components on one grid.
class VectorField3 {
 public:
  explicit VectorField3(const Grid3& grid);
  VectorField3(ScalarField3 u1, ScalarField3 u2, ScalarField3 u3);

  const Grid3& grid() const noexcept { return c_[0].grid(); }
  const ScalarField3& operator[](int a) const noexcept { return c_[a]; }
  ScalarField3& operator[](int a) noexcept { return c_[a]; }
  const ScalarField3& component(Axis a) const noexcept { return c_[static_cast<int>(a)]; }

  VectorField3& operator*=(double c);
  friend VectorField3 operator*(VectorField3 v, double c) { return v *= c; }

  /// |u|^2 at every grid point.
  ScalarField3 norm_squared() const;
  double max_norm() const noexcept;

 private:
  std::array<ScalarField3, 3> c_;
};

/// Throws ValidationError unless both fields live on the same grid.
void require_same_grid(const Grid3& a, const Grid3& b, const char* what);

/// Indicator of the ball: 1 at grid points with periodic distance < radius, else 0.
ScalarField3 ball_mask(const Grid3& grid, const Ball& ball);

}  // namespace nsreg
