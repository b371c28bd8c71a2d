#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "nsreg/error.hpp"
#include "nsreg/reference.hpp"

namespace nsreg::reference {

std::vector<double> gram_kernel(const Grid3& grid, double sigma) {
  const int n = grid.n();
  if (n > 16) throw ValidationError("reference: grid too large for the dense oracle");
  const double k0 = 2.0 * std::numbers::pi / grid.box_len();
  std::vector<int> fold(n);
  std::vector<double> ctab(n);
  for (int m = 0; m < n; ++m) {
    fold[m] = m < n / 2 ? m : m - n;
    ctab[m] = std::cos(2.0 * std::numbers::pi * m / n);
  }
  std::vector<double> sym(grid.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const double k2 = k0 * k0 * (fold[a] * fold[a] + fold[b] * fold[b] + fold[c] * fold[c]);
        sym[grid.index(a, b, c)] = k2 == 0.0 ? 0.0 : std::pow(k2, sigma);
      }
  // g(d) = n^-3 sum_m sym(m) cos(2 pi m.d / n); the symbol is even so the sine parts cancel.
  std::vector<double> g(grid.size());
  const double inv = 1.0 / static_cast<double>(grid.size());
  for (int dx = 0; dx < n; ++dx)
    for (int dy = 0; dy < n; ++dy)
      for (int dz = 0; dz < n; ++dz) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
              const int phase = ((a * dx + b * dy + c * dz) % n + n) % n;
              s += sym[grid.index(a, b, c)] * ctab[phase];
            }
        g[grid.index(dx, dy, dz)] = s * inv;
      }
  return g;
}

double dense_dual_norm(const ScalarField3& f, const Ball& ball, double sigma) {
  const Grid3& grid = f.grid();
  const auto pts = ball_indices(grid, ball);
  const auto nb = static_cast<Eigen::Index>(pts.size());
  if (nb == 0) return 0.0;
  Eigen::VectorXd b(nb);
  for (Eigen::Index i = 0; i < nb; ++i) b[i] = f[pts[i]];
  const double h3 = grid.cell_volume();
  if (sigma == 0.0) return std::sqrt(h3 * b.squaredNorm());

  const std::vector<double> g = gram_kernel(grid, sigma);
  const int n = grid.n();
  auto ijk = [n](std::size_t idx) {
    const int k = static_cast<int>(idx % n);
    const int j = static_cast<int>((idx / n) % n);
    const int i = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
    return std::array<int, 3>{i, j, k};
  };
  Eigen::MatrixXd K(nb, nb);
  for (Eigen::Index r = 0; r < nb; ++r) {
    const auto a = ijk(pts[r]);
    for (Eigen::Index c = 0; c < nb; ++c) {
      const auto d = ijk(pts[c]);
      K(r, c) = g[grid.index(a[0] - d[0], a[1] - d[1], a[2] - d[2])];
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success) throw Error("dense oracle: Gram matrix is not positive definite");
  const Eigen::VectorXd y = llt.solve(b);
  return std::sqrt(h3 * b.dot(y));
}

}  // namespace nsreg::reference
