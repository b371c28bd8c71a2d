#include "nsreg/synth.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "nsreg/error.hpp"

namespace nsreg {

FourierSeries::FourierSeries(double box_len, std::vector<Mode> modes)
    : box_len_(box_len), modes_(std::move(modes)) {
  if (!(box_len > 0.0) || !std::isfinite(box_len)) throw ValidationError("FourierSeries: box_len must be positive");
}

FourierSeries FourierSeries::random(std::uint64_t seed, double box_len, int kmax, double decay) {
  if (kmax < 1) throw ValidationError("FourierSeries::random: kmax must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Mode> modes;
  // One representative per +-m pair: first nonzero component positive.
  for (int i = 0; i <= kmax; ++i)
    for (int j = -kmax; j <= kmax; ++j)
      for (int k = -kmax; k <= kmax; ++k) {
        if (i == 0 && (j < 0 || (j == 0 && k <= 0))) continue;
        const double amp = std::pow(1.0 + i * i + j * j + k * k, -decay / 2.0);
        const double a = amp * gauss(rng);
        const double b = amp * gauss(rng);
        modes.push_back({{i, j, k}, a, b});
      }
  return FourierSeries(box_len, std::move(modes));
}

int FourierSeries::max_wavenumber() const noexcept {
  int m = 0;
  for (const auto& md : modes_)
    for (int c : md.m) m = std::max(m, std::abs(c));
  return m;
}

double FourierSeries::value(const Point3& x) const {
  const double k0 = 2.0 * std::numbers::pi / box_len_;
  double s = 0.0;
  for (const auto& md : modes_) {
    const double ph = k0 * (md.m[0] * x[0] + md.m[1] * x[1] + md.m[2] * x[2]);
    s += md.a * std::cos(ph) + md.b * std::sin(ph);
  }
  return s;
}

double FourierSeries::derivative(const Point3& x, Axis axis) const {
  const double k0 = 2.0 * std::numbers::pi / box_len_;
  const int ax = static_cast<int>(axis);
  double s = 0.0;
  for (const auto& md : modes_) {
    const double ph = k0 * (md.m[0] * x[0] + md.m[1] * x[1] + md.m[2] * x[2]);
    s += k0 * md.m[ax] * (md.b * std::cos(ph) - md.a * std::sin(ph));
  }
  return s;
}

ScalarField3 FourierSeries::sample(const Grid3& grid) const {
  return ScalarField3::from_function(grid, [&](double x, double y, double z) { return value({x, y, z}); });
}

ScalarField3 FourierSeries::sample_derivative(const Grid3& grid, Axis axis) const {
  return ScalarField3::from_function(grid,
                                     [&](double x, double y, double z) { return derivative({x, y, z}, axis); });
}

SolenoidalSeries::SolenoidalSeries(std::array<FourierSeries, 3> potential) : a_(std::move(potential)) {}

SolenoidalSeries SolenoidalSeries::random(std::uint64_t seed, double box_len, int kmax, double decay) {
  return SolenoidalSeries({FourierSeries::random(seed * 3 + 1, box_len, kmax, decay),
                           FourierSeries::random(seed * 3 + 2, box_len, kmax, decay),
                           FourierSeries::random(seed * 3 + 3, box_len, kmax, decay)});
}

Point3 SolenoidalSeries::value(const Point3& x) const {
  return {a_[2].derivative(x, Axis::y) - a_[1].derivative(x, Axis::z),
          a_[0].derivative(x, Axis::z) - a_[2].derivative(x, Axis::x),
          a_[1].derivative(x, Axis::x) - a_[0].derivative(x, Axis::y)};
}

VectorField3 SolenoidalSeries::sample(const Grid3& grid) const {
  return VectorField3(
      a_[2].sample_derivative(grid, Axis::y) - a_[1].sample_derivative(grid, Axis::z),
      a_[0].sample_derivative(grid, Axis::z) - a_[2].sample_derivative(grid, Axis::x),
      a_[1].sample_derivative(grid, Axis::x) - a_[0].sample_derivative(grid, Axis::y));
}

int SolenoidalSeries::max_wavenumber() const noexcept {
  return std::max({a_[0].max_wavenumber(), a_[1].max_wavenumber(), a_[2].max_wavenumber()});
}

SnapshotSeries random_series(std::uint64_t seed, const Grid3& grid, std::vector<double> times, int kmax) {
  const double L = grid.box_len();
  const auto u = SolenoidalSeries::random(seed, L, kmax).sample(grid);
  const auto p = FourierSeries::random(seed * 7 + 5, L, kmax).sample(grid);
  std::vector<Snapshot> snaps;
  for (double t : times) {
    const double s = 1.0 + 0.3 * std::sin(t);
    snaps.push_back({t, u * s, p * (s * s)});
  }
  return SnapshotSeries(grid, std::move(snaps));
}

}  // namespace nsreg
