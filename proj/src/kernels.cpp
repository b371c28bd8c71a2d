#include "nsreg/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace nsreg::kernels {

namespace {

// |x|^q with the common exponents special-cased; pow() dominates the ball integrals otherwise.
inline double abs_pow(double x, double q) {
  const double a = std::abs(x);
  if (q == 1.0) return a;
  if (q == 2.0) return a * a;
  if (q == 3.0) return a * a * a;
  if (q == 4.0) return (a * a) * (a * a);
  if (q == 1.5) return a * std::sqrt(a);
  return std::pow(a, q);
}

}  // namespace

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + beta * y[i];
}

double gather_pow_sum(std::span<const double> v, std::span<const std::size_t> idx, double q) {
  double s = 0.0;
  for (std::size_t i : idx) s += abs_pow(v[i], q);
  return s;
}

double gather_max_abs(std::span<const double> v, std::span<const std::size_t> idx) {
  double m = 0.0;
  for (std::size_t i : idx) m = std::max(m, std::abs(v[i]));
  return m;
}

double gather_sum(std::span<const double> v, std::span<const std::size_t> idx) {
  double s = 0.0;
  for (std::size_t i : idx) s += v[i];
  return s;
}

double gather_dot(std::span<const double> a, std::span<const double> b, std::span<const std::size_t> idx) {
  double s = 0.0;
  for (std::size_t i : idx) s += a[i] * b[i];
  return s;
}

void scale_spectrum(std::span<std::complex<double>> spec, std::span<const double> mult) {
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= mult[i];
}

}  // namespace serial

namespace parallel {

// Static schedules keep reductions reproducible for a fixed thread count.

double dot(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<long>(a.size());
  const double* pa = a.data();
  const double* pb = b.data();
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (long i = 0; i < n; ++i) s += pa[i] * pb[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<long>(x.size());
  const double* px = x.data();
  double* py = y.data();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) py[i] += alpha * px[i];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  const auto n = static_cast<long>(x.size());
  const double* px = x.data();
  double* py = y.data();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) py[i] = px[i] + beta * py[i];
}

double gather_pow_sum(std::span<const double> v, std::span<const std::size_t> idx, double q) {
  const auto n = static_cast<long>(idx.size());
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (long i = 0; i < n; ++i) s += abs_pow(v[idx[i]], q);
  return s;
}

double gather_max_abs(std::span<const double> v, std::span<const std::size_t> idx) {
  const auto n = static_cast<long>(idx.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (long i = 0; i < n; ++i) m = std::max(m, std::abs(v[idx[i]]));
  return m;
}

double gather_sum(std::span<const double> v, std::span<const std::size_t> idx) {
  const auto n = static_cast<long>(idx.size());
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (long i = 0; i < n; ++i) s += v[idx[i]];
  return s;
}

double gather_dot(std::span<const double> a, std::span<const double> b, std::span<const std::size_t> idx) {
  const auto n = static_cast<long>(idx.size());
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (long i = 0; i < n; ++i) s += a[idx[i]] * b[idx[i]];
  return s;
}

void scale_spectrum(std::span<std::complex<double>> spec, std::span<const double> mult) {
  const auto n = static_cast<long>(spec.size());
  std::complex<double>* ps = spec.data();
  const double* pm = mult.data();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) ps[i] *= pm[i];
}

}  // namespace parallel

}  // namespace nsreg::kernels
