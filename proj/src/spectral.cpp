#include "nsreg/spectral.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include "nsreg/error.hpp"
#include "nsreg/kernels.hpp"

namespace nsreg {

namespace {

// The FFTW planner is not thread-safe; executing plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void init_fftw_threads() {
  static std::once_flag once;
  std::call_once(once, [] { fftw_init_threads(); });
}

using cplx = std::complex<double>;

}  // namespace

struct SpectralWorkspace::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  std::size_t nreal = 0;
  std::size_t nspec = 0;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spec);
  }
};

SpectralWorkspace::SpectralWorkspace(const Grid3& grid, int threads) : grid_(grid) {
  init_fftw_threads();
  const int n = grid.n();
  const int nh = half_len();
  plans_ = std::make_unique<Plans>();
  plans_->nreal = grid.size();
  plans_->nspec = static_cast<std::size_t>(n) * n * nh;
  plans_->real = fftw_alloc_real(plans_->nreal);
  plans_->spec = fftw_alloc_complex(plans_->nspec);
  if (!plans_->real || !plans_->spec) throw Error("FFTW buffer allocation failed");
  {
    std::lock_guard lock(planner_mutex());
    fftw_plan_with_nthreads(threads > 0 ? threads : omp_get_max_threads());
    plans_->r2c = fftw_plan_dft_r2c_3d(n, n, n, plans_->real, plans_->spec, FFTW_ESTIMATE);
    plans_->c2r = fftw_plan_dft_c2r_3d(n, n, n, plans_->spec, plans_->real, FFTW_ESTIMATE);
  }
  if (!plans_->r2c || !plans_->c2r) throw Error("FFTW planning failed");

  const double k0 = 2.0 * std::numbers::pi / grid.box_len();
  for (int a = 0; a < 3; ++a) {
    const int len = (a == 2) ? nh : n;
    k_[a].resize(len);
    k_odd_[a].resize(len);
    for (int m = 0; m < len; ++m) {
      const int folded = (m < n / 2) ? m : m - n;  // m == n/2 -> -n/2 (Nyquist)
      const double km = (a == 2) ? k0 * m : k0 * folded;
      k_[a][m] = km;
      k_odd_[a][m] = (m == n / 2) ? 0.0 : km;
    }
  }
  k2_.resize(plans_->nspec);
  weight_.resize(plans_->nspec);
  for_each_mode([&](std::size_t idx, int i, int j, int k) {
    k2_[idx] = k_[0][i] * k_[0][i] + k_[1][j] * k_[1][j] + k_[2][k] * k_[2][k];
    weight_[idx] = (k == 0 || k == n / 2) ? 1.0 : 2.0;
  });
}

SpectralWorkspace::~SpectralWorkspace() = default;
SpectralWorkspace::SpectralWorkspace(SpectralWorkspace&&) noexcept = default;
SpectralWorkspace& SpectralWorkspace::operator=(SpectralWorkspace&&) noexcept = default;

std::size_t SpectralWorkspace::spectral_size() const noexcept { return plans_->nspec; }

std::span<cplx> SpectralWorkspace::spectrum() noexcept {
  return {reinterpret_cast<cplx*>(plans_->spec), plans_->nspec};
}

void SpectralWorkspace::forward(std::span<const double> in) {
  std::memcpy(plans_->real, in.data(), plans_->nreal * sizeof(double));
  fftw_execute(plans_->r2c);
}

void SpectralWorkspace::inverse(std::span<double> out) {
  fftw_execute(plans_->c2r);
  const double scale = 1.0 / static_cast<double>(plans_->nreal);
  const double* src = plans_->real;
  double* dst = out.data();
  const auto n = static_cast<long>(plans_->nreal);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) dst[i] = src[i] * scale;
}

namespace {

void check_grid(const ScalarField3& f, const SpectralWorkspace& ws, const char* what) {
  require_same_grid(f.grid(), ws.grid(), what);
}

// Applies a per-mode complex multiplier m(idx, i, j, k) to f.
template <class Mult>
ScalarField3 apply_multiplier(const ScalarField3& f, SpectralWorkspace& ws, Mult&& m) {
  ws.forward(f.values());
  auto spec = ws.spectrum();
  ws.for_each_mode([&](std::size_t idx, int i, int j, int k) { spec[idx] *= m(idx, i, j, k); });
  ScalarField3 out(f.grid());
  ws.inverse(out.values());
  return out;
}

}  // namespace

ScalarField3 riesz(const ScalarField3& f, Axis axis, SpectralWorkspace& ws) {
  check_grid(f, ws, "riesz");
  const auto k2 = ws.k_squared();
  const int a = static_cast<int>(axis);
  return apply_multiplier(f, ws, [&](std::size_t idx, int i, int j, int k) -> cplx {
    if (k2[idx] == 0.0) return 0.0;
    const int m[3] = {i, j, k};
    return cplx(0.0, ws.k_odd(axis, m[a]) / std::sqrt(k2[idx]));
  });
}

ScalarField3 riesz_double_sum(const ScalarField3& f, SpectralWorkspace& ws) {
  check_grid(f, ws, "riesz_double_sum");
  ScalarField3 out(f.grid());
  for (Axis a : {Axis::x, Axis::y, Axis::z}) out += riesz(riesz(f, a, ws), a, ws);
  return out;
}

ScalarField3 frac_laplacian(const ScalarField3& f, double s, SpectralWorkspace& ws) {
  check_grid(f, ws, "frac_laplacian");
  if (!std::isfinite(s)) throw ValidationError("frac_laplacian: exponent must be finite");
  if (s < -3.0 || s > 3.0) throw ValidationError("frac_laplacian: exponent must lie in [-3, 3]");
  const auto k2 = ws.k_squared();
  return apply_multiplier(f, ws, [&](std::size_t idx, int, int, int) -> cplx {
    if (k2[idx] == 0.0) return 0.0;
    return std::pow(k2[idx], 0.5 * s);
  });
}

ScalarField3 derivative(const ScalarField3& f, Axis axis, SpectralWorkspace& ws) {
  check_grid(f, ws, "derivative");
  const int a = static_cast<int>(axis);
  return apply_multiplier(f, ws, [&](std::size_t, int i, int j, int k) -> cplx {
    const int m[3] = {i, j, k};
    return cplx(0.0, ws.k_odd(axis, m[a]));
  });
}

VectorField3 gradient(const ScalarField3& f, SpectralWorkspace& ws) {
  return VectorField3(derivative(f, Axis::x, ws), derivative(f, Axis::y, ws),
                      derivative(f, Axis::z, ws));
}

ScalarField3 divergence(const VectorField3& v, SpectralWorkspace& ws) {
  ScalarField3 out = derivative(v[0], Axis::x, ws);
  out += derivative(v[1], Axis::y, ws);
  out += derivative(v[2], Axis::z, ws);
  return out;
}

ScalarField3 laplacian(const ScalarField3& f, SpectralWorkspace& ws) {
  check_grid(f, ws, "laplacian");
  const auto k2 = ws.k_squared();
  return apply_multiplier(f, ws, [&](std::size_t idx, int, int, int) -> cplx { return -k2[idx]; });
}

VectorField3 leray_project(const VectorField3& v, SpectralWorkspace& ws) {
  require_same_grid(v.grid(), ws.grid(), "leray_project");
  const std::size_t ns = ws.spectral_size();
  std::vector<cplx> hat[3];
  for (int a = 0; a < 3; ++a) {
    ws.forward(v[a].values());
    hat[a].assign(ws.spectrum().begin(), ws.spectrum().end());
  }
  ws.for_each_mode([&](std::size_t idx, int i, int j, int k) {
    const double kv[3] = {ws.k_odd(Axis::x, i), ws.k_odd(Axis::y, j), ws.k_odd(Axis::z, k)};
    const double kk = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
    if (kk == 0.0) return;
    const cplx kdotu = (kv[0] * hat[0][idx] + kv[1] * hat[1][idx] + kv[2] * hat[2][idx]) / kk;
    for (int a = 0; a < 3; ++a) hat[a][idx] -= kv[a] * kdotu;
  });
  VectorField3 out(v.grid());
  for (int a = 0; a < 3; ++a) {
    std::copy(hat[a].begin(), hat[a].begin() + static_cast<long>(ns), ws.spectrum().begin());
    ws.inverse(out[a].values());
  }
  return out;
}

ScalarField3 riesz_pair_contract(std::span<const ScalarField3, 6> tensor, SpectralWorkspace& ws) {
  static constexpr int kPairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  for (const auto& t : tensor) check_grid(t, ws, "riesz_pair_contract");
  const std::size_t ns = ws.spectral_size();
  std::vector<cplx> acc(ns, cplx(0.0));
  const auto k2 = ws.k_squared();
  for (int c = 0; c < 6; ++c) {
    const int a = kPairs[c][0];
    const int b = kPairs[c][1];
    const double sym = (a == b) ? 1.0 : 2.0;
    ws.forward(tensor[c].values());
    auto spec = ws.spectrum();
    ws.for_each_mode([&](std::size_t idx, int i, int j, int k) {
      if (k2[idx] == 0.0) return;
      const int m[3] = {i, j, k};
      const double ka = ws.k_odd(static_cast<Axis>(a), m[a]);
      const double kb = ws.k_odd(static_cast<Axis>(b), m[b]);
      // R_a R_b has multiplier (i k_a/|k|)(i k_b/|k|) = -k_a k_b / |k|^2.
      acc[idx] -= sym * ka * kb / k2[idx] * spec[idx];
    });
  }
  std::copy(acc.begin(), acc.end(), ws.spectrum().begin());
  ScalarField3 out(ws.grid());
  ws.inverse(out.values());
  return out;
}

ScalarField3 pressure_from_velocity(const VectorField3& u, SpectralWorkspace& ws) {
  require_same_grid(u.grid(), ws.grid(), "pressure_from_velocity");
  static constexpr int kPairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  std::array<ScalarField3, 6> t{ScalarField3(u.grid()), ScalarField3(u.grid()), ScalarField3(u.grid()),
                                ScalarField3(u.grid()), ScalarField3(u.grid()), ScalarField3(u.grid())};
  for (int c = 0; c < 6; ++c) t[c] = multiply(u[kPairs[c][0]], u[kPairs[c][1]]);
  return riesz_pair_contract(std::span<const ScalarField3, 6>(t), ws);
}

double pressure_residual(const VectorField3& u, const ScalarField3& p, SpectralWorkspace& ws) {
  ScalarField3 res = laplacian(p, ws);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      res += derivative(derivative(multiply(u[a], u[b]), static_cast<Axis>(a), ws),
                        static_cast<Axis>(b), ws);
    }
  }
  const double umax = u.max_norm();
  return res.max_abs() / std::max(umax * umax, 1e-300);
}

double spectral_energy(const ScalarField3& f, SpectralWorkspace& ws, bool include_zero_mode) {
  check_grid(f, ws, "spectral_energy");
  ws.forward(f.values());
  auto spec = ws.spectrum();
  const auto w = ws.hermitian_weight();
  double s = 0.0;
  for (std::size_t i = include_zero_mode ? 0 : 1; i < spec.size(); ++i) s += w[i] * std::norm(spec[i]);
  const double n3 = static_cast<double>(f.grid().size());
  const double L = f.grid().box_len();
  return s * L * L * L / (n3 * n3);
}

}  // namespace nsreg
