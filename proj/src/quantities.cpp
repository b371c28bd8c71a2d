#include "nsreg/quantities.hpp"

#include <algorithm>
#include <cmath>

#include "nsreg/error.hpp"
#include "nsreg/kernels.hpp"

namespace nsreg {

namespace kp = kernels::parallel;

std::string to_string(QuantityKind kind) {
  switch (kind) {
    case QuantityKind::A: return "A";
    case QuantityKind::B: return "B";
    case QuantityKind::C_sigma: return "C_sigma";
    case QuantityKind::C_alphabeta: return "C_alphabeta";
    case QuantityKind::D_sigma: return "D_sigma";
    case QuantityKind::D_alphabeta: return "D_alphabeta";
  }
  return "?";
}

TimeWindow time_window(const SnapshotSeries& series, const ParabolicCylinder& cyl) {
  if (!(cyl.radius > 0.0) || !std::isfinite(cyl.radius) || !std::isfinite(cyl.time))
    throw ValidationError("cylinder radius must be positive and time finite");
  const double a = cyl.window_start();
  const double b = cyl.time;
  const double slack = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  TimeWindow w;
  std::vector<double> t;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double ti = series[i].time;
    if (ti >= a - slack && ti <= b + slack) {
      w.indices.push_back(i);
      t.push_back(std::clamp(ti, a, b));
    }
  }
  if (w.indices.empty()) {
    throw WindowError("no snapshot in time window [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                      series.times());
  }
  const std::size_t m = t.size();
  w.weights.assign(m, 0.0);
  if (m == 1) {
    w.weights[0] = b - a;
    return w;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double half = 0.5 * (t[i + 1] - t[i]);
    w.weights[i] += half;
    w.weights[i + 1] += half;
  }
  w.weights.front() += t.front() - a;
  w.weights.back() += b - t.back();
  return w;
}

double integrate_window(const SnapshotSeries& series, const TimeWindow& window,
                        const std::function<double(const Snapshot&)>& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < window.indices.size(); ++i) s += window.weights[i] * g(series[window.indices[i]]);
  return s;
}

namespace {

void check_sigma(double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw ValidationError("sigma must lie in [0, 1]");
}

void check_alphabeta(double alpha, double beta) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 1");
  if (!(beta >= 1.0) || !std::isfinite(beta)) throw ValidationError("beta must be >= 1");
}

double ball_sum_sq(const VectorField3& u, std::span<const std::size_t> pts) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) s += kp::gather_pow_sum(u[a].values(), pts, 2.0);
  return s;
}

}  // namespace

QuantityValue quantity_A(const SnapshotSeries& series, const ParabolicCylinder& cyl) {
  const auto w = time_window(series, cyl);
  const Grid3& g = series.grid();
  const Ball ball = cyl.ball();
  require_ball_fits(g, ball);
  const auto pts = ball_indices(g, ball);
  double best = 0.0;
  for (std::size_t i : w.indices) best = std::max(best, ball_sum_sq(series[i].velocity, pts));
  return {QuantityKind::A, best * g.cell_volume() / cyl.radius, cyl, {}, static_cast<int>(w.indices.size())};
}

QuantityValue quantity_B(const SnapshotSeries& series, const ParabolicCylinder& cyl, SpectralWorkspace& ws) {
  const auto w = time_window(series, cyl);
  const Grid3& g = series.grid();
  const Ball ball = cyl.ball();
  require_ball_fits(g, ball);
  const auto pts = ball_indices(g, ball);
  const double v = integrate_window(series, w, [&](const Snapshot& s) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a) acc += ball_sum_sq(gradient(s.velocity[a], ws), pts);
    return acc * g.cell_volume();
  });
  return {QuantityKind::B, v / cyl.radius, cyl, {}, static_cast<int>(w.indices.size())};
}

double integrate_dual_norm(const SnapshotSeries& series, const TimeWindow& window, const Ball& ball,
                           double sigma, double power, SpectralWorkspace& ws,
                           const std::function<ScalarField3(const Snapshot&)>& g) {
  DualNormSolver solver(ws, {ball, sigma});
  solver.set_warm_start(true);
  return integrate_window(series, window, [&](const Snapshot& s) {
    try {
      return safe_pow(solver.solve(g(s)).value, power);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(std::string(e.what()) + " at t = " + std::to_string(s.time), e.best_value(),
                             e.residual(), e.iterations());
    }
  });
}

QuantityValue quantity_C_sigma(const SnapshotSeries& series, const ParabolicCylinder& cyl, double sigma,
                               SpectralWorkspace& ws) {
  check_sigma(sigma);
  const auto w = time_window(series, cyl);
  const double power = 2.0 / (2.0 - sigma);
  const double v = integrate_dual_norm(series, w, cyl.ball(), sigma, power, ws,
                                       [](const Snapshot& s) { return s.velocity.norm_squared(); });
  return {QuantityKind::C_sigma, safe_pow(cyl.radius, -3.0 / (2.0 - sigma)) * v, cyl, {sigma},
          static_cast<int>(w.indices.size())};
}

QuantityValue quantity_D_sigma(const SnapshotSeries& series, const ParabolicCylinder& cyl, double sigma,
                               SpectralWorkspace& ws) {
  check_sigma(sigma);
  const auto w = time_window(series, cyl);
  const double power = 2.0 / (2.0 - sigma);
  const double v = integrate_dual_norm(series, w, cyl.ball(), sigma, power, ws,
                                       [](const Snapshot& s) { return s.pressure; });
  return {QuantityKind::D_sigma, safe_pow(cyl.radius, -3.0 / (2.0 - sigma)) * v, cyl, {sigma},
          static_cast<int>(w.indices.size())};
}

QuantityValue quantity_C_alphabeta(const SnapshotSeries& series, const ParabolicCylinder& cyl, double alpha,
                                   double beta) {
  check_alphabeta(alpha, beta);
  const auto w = time_window(series, cyl);
  const Grid3& g = series.grid();
  const Ball ball = cyl.ball();
  require_ball_fits(g, ball);
  const auto pts = ball_indices(g, ball);
  const double h3 = g.cell_volume();
  const double v = integrate_window(series, w, [&](const Snapshot& s) {
    // ||u||_{L^{2a}}^{2b} = (int |u|^{2a})^{b/a}
    const ScalarField3 u2 = s.velocity.norm_squared();
    const double integral = kp::gather_pow_sum(u2.values(), pts, alpha) * h3;
    return safe_pow(integral, beta / alpha);
  });
  return {QuantityKind::C_alphabeta, safe_pow(cyl.radius, -1.5 * beta) * v, cyl, {alpha, beta},
          static_cast<int>(w.indices.size())};
}

QuantityValue quantity_D_alphabeta(const SnapshotSeries& series, const ParabolicCylinder& cyl, double alpha,
                                   double beta) {
  check_alphabeta(alpha, beta);
  const auto w = time_window(series, cyl);
  const Grid3& g = series.grid();
  const Ball ball = cyl.ball();
  require_ball_fits(g, ball);
  const auto pts = ball_indices(g, ball);
  const double v = integrate_window(series, w, [&](const Snapshot& s) {
    return safe_pow(lq_ball_norm(s.pressure, pts, alpha), beta);
  });
  return {QuantityKind::D_alphabeta, safe_pow(cyl.radius, -1.5 * beta) * v, cyl, {alpha, beta},
          static_cast<int>(w.indices.size())};
}

double beta_of_alpha(double alpha) {
  if (!(alpha >= 1.2 - 1e-15 && alpha <= 2.0)) throw ValidationError("beta_of_alpha: alpha must lie in [6/5, 2]");
  return 4.0 * alpha / (7.0 * alpha - 6.0);
}

}  // namespace nsreg
