#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the norm, quantity and solver code.
// `serial` is the reference implementation kept for testing; `parallel` is the
// OpenMP version used on the production path. Both must agree to rounding.

namespace nsreg::kernels {

namespace serial {

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// y <- x + beta * y
void xpby(std::span<const double> x, double beta, std::span<double> y);

/// sum over idx of |v[i]|^q (q >= 1, finite)
double gather_pow_sum(std::span<const double> v, std::span<const std::size_t> idx, double q);
double gather_max_abs(std::span<const double> v, std::span<const std::size_t> idx);
double gather_sum(std::span<const double> v, std::span<const std::size_t> idx);
double gather_dot(std::span<const double> a, std::span<const double> b, std::span<const std::size_t> idx);

/// spec[i] *= mult[i]
void scale_spectrum(std::span<std::complex<double>> spec, std::span<const double> mult);

}  // namespace serial

namespace parallel {

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);

double gather_pow_sum(std::span<const double> v, std::span<const std::size_t> idx, double q);
double gather_max_abs(std::span<const double> v, std::span<const std::size_t> idx);
double gather_sum(std::span<const double> v, std::span<const std::size_t> idx);
double gather_dot(std::span<const double> a, std::span<const double> b, std::span<const std::size_t> idx);

void scale_spectrum(std::span<std::complex<double>> spec, std::span<const double> mult);

}  // namespace parallel

}  // namespace nsreg::kernels
