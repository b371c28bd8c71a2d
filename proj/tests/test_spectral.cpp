#include <doctest.h>

#include <cmath>

#include "nsreg/error.hpp"
#include "nsreg/kernels.hpp"
#include "nsreg/reference.hpp"
#include "nsreg/solver.hpp"
#include "nsreg/spectral.hpp"
#include "support.hpp"

using namespace nsreg;
using testing::max_abs_diff;
using testing::mode_cos;
using testing::mode_sin;

namespace {

double inner(const ScalarField3& a, const ScalarField3& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * a.grid().cell_volume();
}

ScalarField3 demean(ScalarField3 f) {
  const double m = f.mean();
  for (double& v : f.values()) v -= m;
  return f;
}

}  // namespace

TEST_CASE("forward then inverse reproduces the input") {
  testing::Gen gen(1);
  Grid3 g(16, 3.0);
  SpectralWorkspace ws(g);
  const ScalarField3 f = gen.noise(g);
  ScalarField3 out(g);
  ws.forward(f.values());
  ws.inverse(out.values());
  CHECK(max_abs_diff(f, out) < 1e-12 * f.max_abs());
}

TEST_CASE("riesz single-mode oracles") {
  for (double L : {1.0, 2.0 * M_PI}) {
    Grid3 g(32, L);
    SpectralWorkspace ws(g);
    const auto s = mode_sin(g, 1, 0, 0);
    CHECK(max_abs_diff(riesz(s, Axis::x, ws), mode_cos(g, 1, 0, 0)) < 1e-12);
    CHECK(riesz(s, Axis::y, ws).max_abs() < 1e-12);
    CHECK(riesz(ScalarField3::constant(g, 2.5), Axis::z, ws).max_abs() == 0.0);
    // k = (1, 2, 0): R_2 sin = (2 / sqrt 5) cos
    const auto c = mode_cos(g, 1, 2, 0) * (2.0 / std::sqrt(5.0));
    CHECK(max_abs_diff(riesz(mode_sin(g, 1, 2, 0), Axis::y, ws), c) < 1e-12);
  }
}

TEST_CASE("riesz rejects a mismatched workspace") {
  Grid3 a(8, 1.0), b(16, 1.0);
  SpectralWorkspace ws(b);
  CHECK_THROWS_AS(riesz(ScalarField3(a), Axis::x, ws), ValidationError);
  CHECK_THROWS_AS(axis_from_number(4), ValidationError);
}

TEST_CASE("riesz double sum removes the mean and flips the sign") {
  Grid3 g(32, 2.0);
  SpectralWorkspace ws(g);
  const auto f = multiply(mode_sin(g, 1, 0, 0), mode_cos(g, 0, 2, 0));
  CHECK(max_abs_diff(riesz_double_sum(f, ws), f * -1.0) < 1e-10);
  CHECK(riesz_double_sum(ScalarField3::constant(g, 3.0), ws).max_abs() < 1e-14);
  CHECK(riesz_double_sum(ScalarField3(g), ws).max_abs() == 0.0);

  testing::Gen gen(5);
  for (int i = 0; i < 5; ++i) {
    const auto r = gen.smooth(g, 6) + ScalarField3::constant(g, 1.7);
    CHECK(max_abs_diff(riesz_double_sum(r, ws), demean(r) * -1.0) < 1e-10);
  }
}

TEST_CASE("fractional laplacian") {
  Grid3 g(32, 2.0 * M_PI);
  SpectralWorkspace ws(g);
  const auto s1 = mode_sin(g, 1, 0, 0);
  CHECK(max_abs_diff(frac_laplacian(s1, 2.0, ws), s1) < 1e-12);
  const auto s3 = mode_sin(g, 1, 1, 1);
  CHECK(max_abs_diff(frac_laplacian(s3, 1.0, ws), s3 * std::sqrt(3.0)) < 1e-12);
  CHECK(max_abs_diff(frac_laplacian(s3, -2.0, ws), s3 * (1.0 / 3.0)) < 1e-12);
  CHECK_THROWS_AS(frac_laplacian(s1, std::nan(""), ws), ValidationError);
  CHECK_THROWS_AS(frac_laplacian(s1, 3.5, ws), ValidationError);

  testing::Gen gen(9);
  const auto f = gen.noise(g);
  CHECK(max_abs_diff(frac_laplacian(demean(f), 0.0, ws), demean(f)) < 1e-12);
  CHECK(max_abs_diff(frac_laplacian(frac_laplacian(f, 1.0, ws), -1.0, ws), demean(f)) < 1e-10);
  for (int i = 0; i < 10; ++i) {
    const double s = gen.uniform(-1, 1), t = gen.uniform(-1, 1);
    const auto h = demean(gen.smooth(g, 5));
    const auto lhs = frac_laplacian(frac_laplacian(h, s, ws), t, ws);
    CHECK(max_abs_diff(lhs, frac_laplacian(h, s + t, ws)) < 1e-9 * std::max(1.0, h.max_abs()));
  }
}

TEST_CASE("multipliers agree with the direct DFT oracle") {
  testing::Gen gen(21);
  Grid3 g(8, 1.7);
  SpectralWorkspace ws(g);
  const auto f = gen.noise(g);
  const double kn = M_PI * g.n() / g.box_len();  // |Nyquist wavenumber|
  auto odd = [kn](double k) { return std::abs(std::abs(k) - kn) < 1e-9 ? 0.0 : k; };

  const auto d_ref = reference::direct_multiplier(f, [&](double kx, double, double) {
    return std::complex<double>(0.0, odd(kx));
  });
  CHECK(max_abs_diff(derivative(f, Axis::x, ws), d_ref) < 1e-10);

  const auto r_ref = reference::direct_multiplier(f, [&](double kx, double ky, double kz) {
    const double k = std::sqrt(kx * kx + ky * ky + kz * kz);
    return k == 0.0 ? std::complex<double>(0.0) : std::complex<double>(0.0, odd(kz) / k);
  });
  CHECK(max_abs_diff(riesz(f, Axis::z, ws), r_ref) < 1e-10);

  const auto l_ref = reference::direct_multiplier(f, [](double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    return k2 == 0.0 ? 0.0 : std::pow(k2, 0.35);
  });
  CHECK(max_abs_diff(frac_laplacian(f, 0.7, ws), l_ref) < 1e-10);

}

TEST_CASE("derivatives") {
  Grid3 g(32, 2.0);
  SpectralWorkspace ws(g);
  const double k = 2.0 * M_PI / g.box_len();
  CHECK(max_abs_diff(derivative(mode_sin(g, 1, 0, 0), Axis::x, ws), mode_cos(g, 1, 0, 0) * k) < 1e-12);
  CHECK(derivative(ScalarField3::constant(g, 4.0), Axis::y, ws).max_abs() == 0.0);

  testing::Gen gen(2);
  const auto f = gen.smooth(g, 10);
  const auto lap = laplacian(f, ws);
  CHECK(max_abs_diff(divergence(gradient(f, ws), ws), lap) < 1e-10 * lap.max_abs());

  const auto series = FourierSeries::random(gen.seed(), g.box_len(), 4);
  const auto num = derivative(series.sample(g), Axis::z, ws);
  CHECK(max_abs_diff(num, series.sample_derivative(g, Axis::z)) < 1e-11);
}

TEST_CASE("parseval") {
  testing::Gen gen(4);
  for (int n : {8, 16}) {
    Grid3 g(n, gen.uniform(0.5, 4.0));
    SpectralWorkspace ws(g);
    for (int i = 0; i < 5; ++i) {
      const auto f = gen.noise(g);
      double m2 = 0.0;
      for (double v : f.values()) m2 += v * v;
      const double L = g.box_len();
      const double physical = m2 / static_cast<double>(g.size()) * L * L * L;
      CHECK(spectral_energy(f, ws) == doctest::Approx(physical).epsilon(1e-10));
    }
  }
}

TEST_CASE("riesz is skew-adjoint on mean-zero fields") {
  testing::Gen gen(6);
  Grid3 g(16, 2.0);
  SpectralWorkspace ws(g);
  for (int i = 0; i < 10; ++i) {
    const auto f = demean(gen.noise(g));
    const auto h = demean(gen.noise(g));
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
      const double lhs = inner(riesz(f, a, ws), h);
      const double rhs = -inner(f, riesz(h, a, ws));
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("leray projection") {
  Grid3 g(32, 2.0 * M_PI);
  SpectralWorkspace ws(g);
  const auto grad = gradient(mode_sin(g, 1, 0, 0), ws);
  CHECK(leray_project(grad, ws).max_norm() < 1e-12);
  CHECK(leray_project(VectorField3(g), ws).max_norm() == 0.0);

  const auto tg = taylor_green_init(g);
  const auto ptg = leray_project(tg, ws);
  for (int a = 0; a < 3; ++a) CHECK(max_abs_diff(ptg[a], tg[a]) < 1e-12);

  testing::Gen gen(8);
  const VectorField3 v(gen.noise(g), gen.noise(g), gen.noise(g));
  const auto pv = leray_project(v, ws);
  CHECK(divergence(pv, ws).max_abs() < 1e-10);
  const auto ppv = leray_project(pv, ws);
  for (int a = 0; a < 3; ++a) CHECK(max_abs_diff(ppv[a], pv[a]) < 1e-12);
  CHECK_THROWS_AS(leray_project(VectorField3(Grid3(8, 1.0)), ws), ValidationError);
}

TEST_CASE("pressure from velocity") {
  Grid3 g(32, 2.0 * M_PI);
  SpectralWorkspace ws(g);
  const VectorField3 c(ScalarField3::constant(g, 1.0), ScalarField3::constant(g, -2.0),
                       ScalarField3::constant(g, 0.5));
  CHECK(pressure_from_velocity(c, ws).max_abs() < 1e-13);
  CHECK(pressure_from_velocity(VectorField3(g), ws).max_abs() == 0.0);

  const auto tg = taylor_green_init(g);
  const auto p = pressure_from_velocity(tg, ws);
  CHECK(pressure_residual(tg, p, ws) < 1e-10);
  CHECK(std::abs(p.mean()) < 1e-14);
  const auto exact = ScalarField3::from_function(g, [](double x, double y, double z) {
    return (std::cos(2 * x) + std::cos(2 * y)) * (std::cos(2 * z) - 2.0) / 16.0;
  });
  CHECK(max_abs_diff(p, exact) < 1e-12);
}

TEST_CASE("serial and parallel kernels agree") {
  testing::Gen gen(12);
  const std::size_t m = 10007;
  std::vector<double> a(m), b(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = gen.uniform(-1, 1);
    b[i] = gen.uniform(-1, 1);
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m; i += 3) idx.push_back(i);
  namespace ks = kernels::serial;
  namespace kp = kernels::parallel;
  CHECK(kp::dot(a, b) == doctest::Approx(ks::dot(a, b)).epsilon(1e-12));
  CHECK(kp::gather_pow_sum(a, idx, 1.5) == doctest::Approx(ks::gather_pow_sum(a, idx, 1.5)).epsilon(1e-12));
  CHECK(kp::gather_max_abs(a, idx) == ks::gather_max_abs(a, idx));
  CHECK(kp::gather_sum(a, idx) == doctest::Approx(ks::gather_sum(a, idx)).epsilon(1e-12));
  CHECK(kp::gather_dot(a, b, idx) == doctest::Approx(ks::gather_dot(a, b, idx)).epsilon(1e-12));

  auto y1 = b, y2 = b;
  ks::axpy(0.3, a, y1);
  kp::axpy(0.3, a, y2);
  CHECK(y1 == y2);
  ks::xpby(a, -0.7, y1);
  kp::xpby(a, -0.7, y2);
  CHECK(y1 == y2);

  std::vector<std::complex<double>> s1(m), s2;
  for (std::size_t i = 0; i < m; ++i) s1[i] = {a[i], b[i]};
  s2 = s1;
  ks::scale_spectrum(s1, a);
  kp::scale_spectrum(s2, a);
  CHECK(s1 == s2);
}
