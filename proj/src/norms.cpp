#include "nsreg/norms.hpp"

#include <algorithm>
#include <cmath>

#include "nsreg/error.hpp"
#include "nsreg/kernels.hpp"

namespace nsreg {

namespace kp = kernels::parallel;

double safe_pow(double x, double p) {
  if (x == 0.0) return p == 0.0 ? 1.0 : 0.0;
  if (x < 1e-300) return std::exp(p * std::log(x));
  return std::pow(x, p);
}

double lq_ball_norm(const ScalarField3& f, std::span<const std::size_t> pts, double q) {
  if (!(q >= 1.0)) throw ValidationError("lq_ball_norm: q must be >= 1");
  if (pts.empty()) return 0.0;
  if (std::isinf(q)) return kp::gather_max_abs(f.values(), pts);
  const double s = kp::gather_pow_sum(f.values(), pts, q) * f.grid().cell_volume();
  if (q == 1.0) return s;
  if (q == 2.0) return std::sqrt(s);
  return safe_pow(s, 1.0 / q);
}

double lq_ball_norm(const ScalarField3& f, const Ball& ball, double q) {
  const auto pts = ball_indices(f.grid(), ball);
  return lq_ball_norm(f, pts, q);
}

double hsigma_norm(const ScalarField3& f, double sigma, SpectralWorkspace& ws) {
  if (!(sigma >= -3.0 && sigma <= 3.0)) throw ValidationError("hsigma_norm: sigma must lie in [-3, 3]");
  if (!(f.grid() == ws.grid())) throw ValidationError("hsigma_norm: workspace grid mismatch");
  ws.forward(f.values());
  const auto spec = ws.spectrum();
  const auto k2 = ws.k_squared();
  const auto w = ws.hermitian_weight();
  double s = 0.0;
  for (std::size_t i = 1; i < spec.size(); ++i) {
    if (k2[i] == 0.0) continue;
    s += w[i] * std::pow(k2[i], sigma) * std::norm(spec[i]);
  }
  const double n3 = static_cast<double>(f.grid().size());
  const double L = f.grid().box_len();
  return std::sqrt(s * L * L * L / (n3 * n3));
}

void DualNormProblem::validate() const {
  if (!(sigma >= 0.0 && sigma < 1.5)) throw ValidationError("dual norm: sigma must lie in [0, 3/2)");
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw ValidationError("dual norm: tolerance must lie in (0, 1)");
  if (max_iter < 1) throw ValidationError("dual norm: max_iter must be >= 1");
}

DualNormSolver::DualNormSolver(SpectralWorkspace& ws, DualNormProblem problem)
    : ws_(&ws), problem_(std::move(problem)) {
  problem_.validate();
  const Grid3& g = ws.grid();
  require_ball_fits(g, problem_.ball);
  ball_ = ball_indices(g, problem_.ball);
  if (problem_.sigma == 0.0) return;

  const auto k2 = ws.k_squared();
  const auto w = ws.hermitian_weight();
  multiplier_.resize(k2.size());
  double trace = 0.0;
  for (std::size_t i = 0; i < k2.size(); ++i) {
    multiplier_[i] = k2[i] == 0.0 ? 0.0 : std::pow(k2[i], problem_.sigma);
    trace += w[i] * multiplier_[i];
  }
  // The diagonal of a circulant operator is the mean of its symbol.
  diagonal_ = trace / static_cast<double>(g.size());
  full_.assign(g.size(), 0.0);
}

void DualNormSolver::apply(std::span<const double> x, std::span<double> y) {
  const auto nb = static_cast<long>(ball_.size());
  if (problem_.sigma == 0.0) {
    std::copy(x.begin(), x.end(), y.begin());
    return;
  }
  double* full = full_.data();
  const std::size_t* idx = ball_.data();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nb; ++i) full[idx[i]] = x[i];
  ws_->forward(full_);
  kp::scale_spectrum(ws_->spectrum(), multiplier_);
  ws_->inverse(full_);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nb; ++i) y[i] = full[idx[i]];
  // Restore the zero-off-ball invariant of the scatter buffer.
  std::fill(full_.begin(), full_.end(), 0.0);
}

DualNormResult DualNormSolver::solve(const ScalarField3& f) {
  const Grid3& g = ws_->grid();
  if (!(f.grid() == g)) throw ValidationError("dual norm: field grid does not match workspace");
  const double h3 = g.cell_volume();
  const std::size_t nb = ball_.size();
  if (nb == 0) return {};

  std::vector<double> b(nb);
  for (std::size_t i = 0; i < nb; ++i) b[i] = f[ball_[i]];

  if (problem_.sigma == 0.0) {
    return {lq_ball_norm(f, ball_, 2.0), 0, 0.0};
  }

  const double bnorm = std::sqrt(kp::dot(b, b));
  if (bnorm == 0.0) return {};

  std::vector<double> x(nb, 0.0), r(b), z(nb), p(nb), Ap(nb);
  if (warm_start_ && previous_.size() == nb) {
    x = previous_;
    apply(x, Ap);
    for (std::size_t i = 0; i < nb; ++i) r[i] = b[i] - Ap[i];
  }
  const double inv_diag = 1.0 / diagonal_;
  auto value_of = [&](const std::vector<double>& xs) {
    return std::sqrt(std::max(0.0, h3 * kp::dot(b, xs)));
  };

  double rnorm = std::sqrt(kp::dot(r, r));
  int it = 0;
  if (rnorm > problem_.tolerance * bnorm) {
    for (std::size_t i = 0; i < nb; ++i) z[i] = r[i] * inv_diag;
    p = z;
    double rz = kp::dot(r, z);
    while (true) {
      apply(p, Ap);
      const double pAp = kp::dot(p, Ap);
      if (!(pAp > 0.0)) break;
      const double alpha = rz / pAp;
      kp::axpy(alpha, p, x);
      kp::axpy(-alpha, Ap, r);
      ++it;
      rnorm = std::sqrt(kp::dot(r, r));
      if (rnorm <= problem_.tolerance * bnorm || it >= problem_.max_iter) break;
      for (std::size_t i = 0; i < nb; ++i) z[i] = r[i] * inv_diag;
      const double rz_new = kp::dot(r, z);
      kp::xpby(z, rz_new / rz, p);
      rz = rz_new;
    }
  }
  const double rel = rnorm / bnorm;
  const double value = value_of(x);
  if (rel > problem_.tolerance) {
    throw ConvergenceError("dual norm: CG did not reach tolerance after " + std::to_string(it) +
                               " iterations",
                           value, rel, it);
  }
  if (warm_start_) previous_ = x;
  return {value, it, rel};
}

DualNormResult dual_norm(const ScalarField3& f, const DualNormProblem& problem, SpectralWorkspace& ws) {
  DualNormSolver solver(ws, problem);
  return solver.solve(f);
}

ScalarField3 sample_with_regularized_center(const Grid3& grid,
                                            const std::function<double(const Point3&)>& g) {
  const int n = grid.n();
  const double L = grid.box_len();
  const Point3 c{L / 2, L / 2, L / 2};
  std::vector<double> v(grid.size());
  const int ic = static_cast<int>(std::lround(c[0] / grid.spacing()));
  auto sample = [&](int i, int j, int k) {
    const Point3 x = grid.coord(i, j, k);
    return g({grid.periodic_delta(x[0], c[0]), grid.periodic_delta(x[1], c[1]),
              grid.periodic_delta(x[2], c[2])});
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == ic && j == ic && k == ic) continue;
        v[grid.index(i, j, k)] = sample(i, j, k);
      }
  const Point3 xc = grid.coord(ic, ic, ic);
  if (grid.periodic_distance(xc, c) < 1e-12 * L) {
    double s = 0.0;
    for (int d = -1; d <= 1; d += 2) {
      s += v[grid.index(ic + d, ic, ic)] + v[grid.index(ic, ic + d, ic)] + v[grid.index(ic, ic, ic + d)];
    }
    v[grid.index(ic, ic, ic)] = s / 6.0;
  } else {
    v[grid.index(ic, ic, ic)] = sample(ic, ic, ic);
  }
  return ScalarField3(grid, std::move(v));
}

ScalarField3 oscillation_field(const Grid3& grid, double s, double eps, bool absolute) {
  return sample_with_regularized_center(grid, [=](const Point3& d) {
    const double rho = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    const double v = std::pow(rho, -eps - s) * std::sin(std::pow(rho, -eps));
    return absolute ? std::abs(v) : v;
  });
}

std::vector<OscillationRow> oscillation_probe_with(const std::function<double(const Point3&)>& g,
                                                   double sigma, std::span<const int> resolutions,
                                                   const OscillationProbeOptions& options) {
  if (!(options.box_len >= 4.0 * options.radius))
    throw ValidationError("oscillation probe: box must be at least 4 radii wide");
  std::vector<OscillationRow> rows;
  for (int n : resolutions) {
    Grid3 grid(n, options.box_len);
    SpectralWorkspace ws(grid);
    const double L = options.box_len;
    DualNormSolver solver(ws, {Ball({L / 2, L / 2, L / 2}, options.radius), sigma, options.tolerance,
                               options.max_iter});
    const ScalarField3 f = sample_with_regularized_center(grid, g);
    const ScalarField3 fa = sample_with_regularized_center(grid, [&](const Point3& d) { return std::abs(g(d)); });
    const auto rs = solver.solve(f);
    const auto ra = solver.solve(fa);
    rows.push_back({n, rs.value, ra.value, rs.iterations, ra.iterations});
  }
  return rows;
}

std::vector<OscillationRow> oscillation_probe(double s, double eps, double sigma,
                                              std::span<const int> resolutions,
                                              const OscillationProbeOptions& options) {
  if (!(s > 0.0 && eps > 0.0)) throw ValidationError("oscillation probe: s and eps must be positive");
  return oscillation_probe_with(
      [=](const Point3& d) {
        const double rho = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        return std::pow(rho, -eps - s) * std::sin(std::pow(rho, -eps));
      },
      sigma, resolutions, options);
}

InequalitySides mean_zero_interpolation_check(const ScalarField3& f, const Ball& ball, double q,
                                              SpectralWorkspace& ws) {
  if (!(q >= 2.0 && q <= 6.0)) throw ValidationError("interpolation check: q must lie in [2, 6]");
  const auto pts = ball_indices(f.grid(), ball);
  if (pts.empty()) return {};
  const double h3 = f.grid().cell_volume();
  const double mean = kp::gather_sum(f.values(), pts) / static_cast<double>(pts.size());
  ScalarField3 g = f;
  for (double& v : g.values()) v -= mean;
  const VectorField3 grad = gradient(f, ws);
  double grad2 = 0.0;
  for (int a = 0; a < 3; ++a) grad2 += kp::gather_pow_sum(grad[a].values(), pts, 2.0);
  grad2 *= h3;
  const double lhs = kp::gather_pow_sum(g.values(), pts, q) * h3;
  const double l2 = kp::gather_pow_sum(g.values(), pts, 2.0) * h3;
  const double rhs = safe_pow(grad2, 0.75 * q - 1.5) * safe_pow(l2, 1.5 - 0.25 * q);
  return {lhs, rhs, lhs == 0.0 ? 0.0 : lhs / rhs};
}

}  // namespace nsreg
