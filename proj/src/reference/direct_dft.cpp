#include <cmath>
#include <numbers>
#include <vector>

#include "nsreg/error.hpp"
#include "nsreg/reference.hpp"

namespace nsreg::reference {

namespace {

using cplx = std::complex<double>;

int fold(int m, int n) { return m < n / 2 ? m : m - n; }

void require_small(const Grid3& g) {
  if (g.n() > 16) throw ValidationError("reference: grid too large for direct summation");
}

// Full 3-D DFT by separable direct sums, F[m] = sum_x f[x] exp(-i 2 pi m.x / n).
std::vector<cplx> dft(const std::vector<cplx>& in, int n, int sign) {
  std::vector<cplx> a = in, b(in.size());
  std::vector<cplx> tw(n);
  for (int t = 0; t < n; ++t) tw[t] = std::polar(1.0, sign * 2.0 * std::numbers::pi * t / n);
  auto at = [n](int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
  for (int axis = 0; axis < 3; ++axis) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          cplx s = 0.0;
          for (int q = 0; q < n; ++q) {
            const int idx[3] = {i, j, k};
            const int m = idx[axis];
            int src[3] = {i, j, k};
            src[axis] = q;
            s += a[at(src[0], src[1], src[2])] * tw[(static_cast<long>(m) * q) % n];
          }
          b[at(i, j, k)] = s;
        }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

ScalarField3 direct_multiplier(const ScalarField3& f,
                               const std::function<cplx(double, double, double)>& mult) {
  const Grid3& g = f.grid();
  require_small(g);
  const int n = g.n();
  const double k0 = 2.0 * std::numbers::pi / g.box_len();
  std::vector<cplx> v(f.values().begin(), f.values().end());
  std::vector<cplx> F = dft(v, n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        F[g.index(i, j, k)] *= mult(k0 * fold(i, n), k0 * fold(j, n), k0 * fold(k, n));
  std::vector<cplx> back = dft(F, n, +1);
  std::vector<double> out(back.size());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = back[i].real() * scale;
  return ScalarField3(g, std::move(out));
}

double direct_hsigma_norm(const ScalarField3& f, double sigma) {
  const Grid3& g = f.grid();
  require_small(g);
  const int n = g.n();
  const double k0 = 2.0 * std::numbers::pi / g.box_len();
  std::vector<cplx> v(f.values().begin(), f.values().end());
  const std::vector<cplx> F = dft(v, n, -1);
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double a = fold(i, n), b = fold(j, n), c = fold(k, n);
        const double k2 = k0 * k0 * (a * a + b * b + c * c);
        if (k2 == 0.0) continue;
        s += std::pow(k2, sigma) * std::norm(F[g.index(i, j, k)]);
      }
  const double n3 = static_cast<double>(g.size());
  const double L = g.box_len();
  return std::sqrt(s * L * L * L / (n3 * n3));
}

}  // namespace nsreg::reference
