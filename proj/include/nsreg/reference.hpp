#pragma once

#include <complex>
#include <functional>

#include "nsreg/field.hpp"

// Slow, transform-free implementations used as test oracles. They share no
// code with the FFT path and are only practical on small grids.

namespace nsreg::reference {

/// Kernel of (-Delta)^sigma on the grid by direct summation over all wavevectors:
/// g(d) = n^-3 sum_k |k|^{2 sigma} cos(k . d), zero mode omitted, Nyquist modes included.
/// Returns g at every grid offset (i, j, k), row-major.
std::vector<double> gram_kernel(const Grid3& grid, double sigma);

/// sqrt(h^3 f_B . K_B^{-1} f_B) with K_B assembled densely from gram_kernel and factored
/// by Cholesky; sigma = 0 uses K_B = I. Requires n <= 16.
double dense_dual_norm(const ScalarField3& f, const Ball& ball, double sigma);

/// Applies a Fourier multiplier m(kx, ky, kz) by direct O(n^6) DFT sums. Nyquist
/// wavenumbers are passed folded to -n/2. Requires n <= 16.
ScalarField3 direct_multiplier(const ScalarField3& f,
                               const std::function<std::complex<double>(double, double, double)>& m);

/// Homogeneous Sobolev norm from a direct DFT.
double direct_hsigma_norm(const ScalarField3& f, double sigma);

}  // namespace nsreg::reference
