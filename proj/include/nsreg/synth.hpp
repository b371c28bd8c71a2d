#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nsreg/field.hpp"
#include "nsreg/series.hpp"

namespace nsreg {

/// Real trigonometric polynomial on the periodic box [0, L)^3:
///   f(x) = sum_m a_m cos(k_m . x) + b_m sin(k_m . x),  k_m = (2 pi / L) m.
/// Being analytic, it can be sampled on any grid and differentiated exactly.
class FourierSeries {
 public:
  struct Mode {
    std::array<int, 3> m;
    double a;
    double b;
  };

  FourierSeries(double box_len, std::vector<Mode> modes);

  /// Seeded random series with integer wave numbers |m_i| <= kmax and amplitudes
  /// decaying like (1 + |m|^2)^{-decay/2}.
  static FourierSeries random(std::uint64_t seed, double box_len, int kmax, double decay = 2.0);

  double box_len() const noexcept { return box_len_; }
  const std::vector<Mode>& modes() const noexcept { return modes_; }
  /// Largest |m_i| present; the series is band-limited on grids with n > 2 * max_wavenumber().
  int max_wavenumber() const noexcept;

  double value(const Point3& x) const;
  /// Partial derivative along `axis`.
  double derivative(const Point3& x, Axis axis) const;

  ScalarField3 sample(const Grid3& grid) const;
  /// Samples the partial derivative along `axis`.
  ScalarField3 sample_derivative(const Grid3& grid, Axis axis) const;

 private:
  double box_len_;
  std::vector<Mode> modes_;
};

/// Divergence-free velocity u = curl A for a vector potential of three series.
class SolenoidalSeries {
 public:
  explicit SolenoidalSeries(std::array<FourierSeries, 3> potential);
  static SolenoidalSeries random(std::uint64_t seed, double box_len, int kmax, double decay = 2.0);

  Point3 value(const Point3& x) const;
  VectorField3 sample(const Grid3& grid) const;
  int max_wavenumber() const noexcept;

 private:
  std::array<FourierSeries, 3> a_;
};

/// Seeded smooth snapshot series: velocity from a random SolenoidalSeries
/// modulated in time by (1 + 0.3 sin(t)), pressure from a random FourierSeries.
SnapshotSeries random_series(std::uint64_t seed, const Grid3& grid, std::vector<double> times, int kmax = 2);

}  // namespace nsreg
