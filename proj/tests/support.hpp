#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "nsreg/field.hpp"
#include "nsreg/spectral.hpp"
#include "nsreg/synth.hpp"

// Hand-rolled generators for the property tests.
namespace nsreg::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  std::uint64_t seed() { return rng_(); }

  Point3 point(double box_len) { return {uniform(0, box_len), uniform(0, box_len), uniform(0, box_len)}; }

  /// White noise, not band-limited.
  ScalarField3 noise(const Grid3& g) {
    std::normal_distribution<double> nd;
    std::vector<double> v(g.size());
    for (double& x : v) x = nd(rng_);
    return ScalarField3(g, std::move(v));
  }

  /// Smooth field resolved on g (all wave numbers below n/2).
  ScalarField3 smooth(const Grid3& g, int kmax = 3) {
    return FourierSeries::random(seed(), g.box_len(), std::min(kmax, g.n() / 2 - 1)).sample(g);
  }

 private:
  std::mt19937_64 rng_;
};

/// Drops every mode with a Nyquist index, leaving a field that odd multipliers treat exactly.
inline ScalarField3 without_nyquist(const ScalarField3& f, SpectralWorkspace& ws) {
  const int nyq = f.grid().n() / 2;
  ws.forward(f.values());
  auto spec = ws.spectrum();
  ws.for_each_mode([&](std::size_t idx, int i, int j, int k) {
    if (i == nyq || j == nyq || k == nyq) spec[idx] = 0.0;
  });
  ScalarField3 out(f.grid());
  ws.inverse(out.values());
  return out;
}

inline double max_abs_diff(const ScalarField3& a, const ScalarField3& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline ScalarField3 mode_sin(const Grid3& g, int mx, int my, int mz) {
  const double k = 2.0 * M_PI / g.box_len();
  return ScalarField3::from_function(g, [=](double x, double y, double z) {
    return std::sin(k * (mx * x + my * y + mz * z));
  });
}

inline ScalarField3 mode_cos(const Grid3& g, int mx, int my, int mz) {
  const double k = 2.0 * M_PI / g.box_len();
  return ScalarField3::from_function(g, [=](double x, double y, double z) {
    return std::cos(k * (mx * x + my * y + mz * z));
  });
}

}  // namespace nsreg::testing
