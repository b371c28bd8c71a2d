#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "nsreg/field.hpp"

namespace nsreg {

/// FFT plans, scratch buffers and wavevector tables for one grid.
///
/// Transforms are real-to-complex over the half spectrum n x n x (n/2+1). The
/// forward transform is an unnormalized sum; the inverse divides by n^3.
/// Wavevectors are k = (2 pi / L) m with m folded to [-n/2, n/2). Odd
/// multipliers (derivatives, Riesz transforms, the Leray projector) use the
/// wavevector with its Nyquist components zeroed so that they map real fields
/// to real fields; even multipliers use the full |k|.
///
/// A workspace is mutable scratch: one per worker, never shared concurrently.
class SpectralWorkspace {
 public:
  /// threads <= 0 selects omp_get_max_threads().
  explicit SpectralWorkspace(const Grid3& grid, int threads = 0);
  ~SpectralWorkspace();
  SpectralWorkspace(SpectralWorkspace&&) noexcept;
  SpectralWorkspace& operator=(SpectralWorkspace&&) noexcept;
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const Grid3& grid() const noexcept { return grid_; }
  int half_len() const noexcept { return grid_.n() / 2 + 1; }
  std::size_t spectral_size() const noexcept;

  /// Current spectrum (written by forward, consumed by inverse).
  std::span<std::complex<double>> spectrum() noexcept;

  void forward(std::span<const double> in);
  /// Inverse transform of spectrum() into out; spectrum() is clobbered.
  void inverse(std::span<double> out);

  /// Full wavenumber along `axis` for 1-D mode index m (0 <= m < n, or < n/2+1 for z).
  double k(Axis axis, int m) const noexcept { return k_[static_cast<int>(axis)][m]; }
  /// Same, but zero on the Nyquist index.
  double k_odd(Axis axis, int m) const noexcept { return k_odd_[static_cast<int>(axis)][m]; }
  /// |k|^2 for each half-spectrum index.
  std::span<const double> k_squared() const noexcept { return k2_; }
  /// Multiplicity of each half-spectrum index in the full spectrum (1 or 2).
  std::span<const double> hermitian_weight() const noexcept { return weight_; }

  /// Calls fn(index, i, j, k) for every half-spectrum mode in storage order.
  template <class Fn>
  void for_each_mode(Fn&& fn) const {
    const int n = grid_.n();
    const int nh = half_len();
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < nh; ++k, ++idx) fn(idx, i, j, k);
  }

 private:
  struct Plans;
  Grid3 grid_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> k_[3];
  std::vector<double> k_odd_[3];
  std::vector<double> k2_;
  std::vector<double> weight_;
};

/// R_axis f: multiplier i k_axis / |k|, zero mode mapped to 0.
ScalarField3 riesz(const ScalarField3& f, Axis axis, SpectralWorkspace& ws);

/// sum_i R_i R_i f, computed by composing riesz(); equals -(f - mean f) on band-limited fields.
ScalarField3 riesz_double_sum(const ScalarField3& f, SpectralWorkspace& ws);

/// (-Delta)^{s/2} f: multiplier |k|^s, zero mode dropped. s must lie in [-3, 3].
ScalarField3 frac_laplacian(const ScalarField3& f, double s, SpectralWorkspace& ws);

/// Fourier-space projection onto divergence-free fields.
VectorField3 leray_project(const VectorField3& v, SpectralWorkspace& ws);

/// Mean-zero p solving -Delta p = div div (u (x) u).
ScalarField3 pressure_from_velocity(const VectorField3& u, SpectralWorkspace& ws);

/// sum_ij R_i R_j T_ij for a symmetric tensor given by its six upper-triangular
/// components (11, 12, 13, 22, 23, 33).
ScalarField3 riesz_pair_contract(std::span<const ScalarField3, 6> tensor, SpectralWorkspace& ws);

/// ||Delta p + div div(u (x) u)||_inf / max(||u||_inf^2, tiny), all derivatives spectral.
double pressure_residual(const VectorField3& u, const ScalarField3& p, SpectralWorkspace& ws);

ScalarField3 derivative(const ScalarField3& f, Axis axis, SpectralWorkspace& ws);
VectorField3 gradient(const ScalarField3& f, SpectralWorkspace& ws);
ScalarField3 divergence(const VectorField3& v, SpectralWorkspace& ws);
ScalarField3 laplacian(const ScalarField3& f, SpectralWorkspace& ws);

/// (L^3 / n^6) sum_k |f_k|^2 over the full spectrum; equals mean(f^2) L^3 by Parseval.
double spectral_energy(const ScalarField3& f, SpectralWorkspace& ws, bool include_zero_mode = true);

}  // namespace nsreg
