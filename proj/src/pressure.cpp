#include "nsreg/pressure.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "nsreg/error.hpp"
#include "nsreg/kernels.hpp"
#include "nsreg/quantities.hpp"

namespace nsreg {

namespace kp = kernels::parallel;

double spatial_mean(const ScalarField3& f, const Ball& ball) {
  const auto pts = ball_indices(f.grid(), ball);
  if (pts.empty()) throw ValidationError("spatial_mean: discrete ball holds no grid point");
  return kp::gather_sum(f.values(), pts) / static_cast<double>(pts.size());
}

PressureSplit split_pressure(const VectorField3& u, const ScalarField3& p, const Ball& ball,
                             SpectralWorkspace& ws) {
  const Grid3& g = u.grid();
  require_same_grid(g, p.grid(), "split_pressure");
  if (!(g == ws.grid())) throw ValidationError("split_pressure: workspace grid mismatch");
  require_ball_fits(g, ball, 0.25);
  const auto pts = ball_indices(g, ball);

  std::array<ScalarField3, 3> w{ScalarField3(g), ScalarField3(g), ScalarField3(g)};
  if (!pts.empty()) {
    for (int a = 0; a < 3; ++a) {
      const double m = kp::gather_sum(u[a].values(), pts) / static_cast<double>(pts.size());
      for (std::size_t i : pts) w[a][i] = u[a][i] - m;
    }
  }
  std::array<ScalarField3, 6> t{multiply(w[0], w[0]), multiply(w[0], w[1]), multiply(w[0], w[2]),
                                multiply(w[1], w[1]), multiply(w[1], w[2]), multiply(w[2], w[2])};
  ScalarField3 p_tilde = riesz_pair_contract(t, ws);
  ScalarField3 h = p - p_tilde;

  const ScalarField3 lap = laplacian(h, ws);
  const auto inner = ball_indices(g, ball.scaled(0.9));
  const double res = inner.empty() ? 0.0 : kp::gather_max_abs(lap.values(), inner);
  return {ball, std::move(p_tilde), std::move(h), res / (p.max_abs() + 1e-300)};
}

BoundReport finish_bound(std::string label, double lhs, std::vector<NamedValue> terms) {
  BoundReport r{std::move(label), lhs, std::move(terms), 0.0, 0.0, false, {}};
  for (const auto& t : r.terms) r.rhs += t.value;
  if (lhs == 0.0) {
    r.empirical_C = 0.0;
  } else if (r.rhs == 0.0) {
    r.empirical_C = std::numeric_limits<double>::infinity();
    r.violation = true;
  } else {
    r.empirical_C = lhs / r.rhs;
  }
  return r;
}

InequalitySides harmonic_dual_bound_check(const ScalarField3& h, const Ball& ball, double sigma,
                                          SpectralWorkspace& ws) {
  const double r = ball.radius();
  const double lhs = lq_ball_norm(h, ball, 2.0);
  const double rhs = safe_pow(r, -sigma) * dual_norm(h, {ball.scaled(2.0), sigma}, ws).value;
  double ratio = 0.0;
  if (lhs != 0.0) ratio = rhs == 0.0 ? std::numeric_limits<double>::infinity() : lhs / rhs;
  return {lhs, rhs, ratio};
}

std::string to_string(PressureBound variant) {
  switch (variant) {
    case PressureBound::p: return "eq-p";
    case PressureBound::pbar: return "eq-pbar";
    case PressureBound::DDtiti: return "eq-DDtiti";
  }
  return "?";
}

PressureBound pressure_bound_from_string(const std::string& s) {
  const std::string k = s.rfind("eq-", 0) == 0 ? s.substr(3) : s;
  if (k == "p") return PressureBound::p;
  if (k == "pbar") return PressureBound::pbar;
  if (k == "DDtiti") return PressureBound::DDtiti;
  throw ValidationError("unknown pressure bound variant '" + s + "'");
}

std::pair<double, double> pressure_bound_exponents(PressureBound variant, double sigma) {
  if (variant == PressureBound::DDtiti) return {0.25 + sigma / 2.0, 0.75 - sigma / 2.0};
  return {0.25, 0.75};
}

namespace {

// int over the window of g(snapshot)
double window_integral(const SnapshotSeries& s, const ParabolicCylinder& cyl,
                       const std::function<double(const Snapshot&)>& g) {
  return integrate_window(s, time_window(s, cyl), g);
}

ScalarField3 minus_ball_mean(const ScalarField3& p, std::span<const std::size_t> pts) {
  ScalarField3 q = p;
  if (pts.empty()) return q;
  const double m = kp::gather_sum(p.values(), pts) / static_cast<double>(pts.size());
  for (double& v : q.values()) v -= m;
  return q;
}

}  // namespace

BoundReport pressure_bound_check(const SnapshotSeries& series, const ParabolicCylinder& inner, double rho,
                                 PressureBound variant, double sigma, SpectralWorkspace& ws) {
  const double r = inner.radius;
  if (!(r > 0.0 && rho > 0.0) || !std::isfinite(rho))
    throw ValidationError("pressure bound: radii must be positive");
  if (r > rho / 2.0 * (1.0 + 1e-12))
    throw ValidationError("pressure bound: requires r <= rho/2 (the inner cylinder must sit in Q_rho with r in (0, rho/2])");
  if (variant == PressureBound::DDtiti && !(sigma >= 0.0 && sigma < 1.5))
    throw ValidationError("pressure bound: sigma must lie in [0, 3/2)");
  const Grid3& g = series.grid();
  const ParabolicCylinder outer{inner.center, inner.time, rho};
  const auto pts_r = ball_indices(g, inner.ball());
  const auto pts_rho = ball_indices(g, outer.ball());

  const double A = quantity_A(series, outer).value;
  const double B = quantity_B(series, outer, ws).value;
  const auto [ea, eb] = pressure_bound_exponents(variant, sigma);

  double lhs = 0.0;
  double pterm = 0.0;
  double abterm = 0.0;
  switch (variant) {
    case PressureBound::p:
      lhs = safe_pow(r, -1.5) *
            window_integral(series, inner, [&](const Snapshot& s) { return lq_ball_norm(s.pressure, pts_r, 2.0); });
      pterm = safe_pow(rho, -3.0) *
              window_integral(series, outer, [&](const Snapshot& s) { return lq_ball_norm(s.pressure, pts_rho, 1.0); });
      abterm = safe_pow(rho / r, 1.5) * safe_pow(A, ea) * safe_pow(B, eb);
      break;
    case PressureBound::pbar:
      lhs = safe_pow(r, -1.5) * window_integral(series, inner, [&](const Snapshot& s) {
              return lq_ball_norm(minus_ball_mean(s.pressure, pts_r), pts_r, 2.0);
            });
      pterm = (r / rho) * safe_pow(rho, -3.0) * window_integral(series, outer, [&](const Snapshot& s) {
                return lq_ball_norm(minus_ball_mean(s.pressure, pts_rho), pts_rho, 1.0);
              });
      abterm = safe_pow(rho / r, 1.5) * safe_pow(A, ea) * safe_pow(B, eb);
      break;
    case PressureBound::DDtiti:
      lhs = safe_pow(r, -3.0) *
            window_integral(series, inner, [&](const Snapshot& s) { return lq_ball_norm(s.pressure, pts_r, 1.0); });
      pterm = safe_pow(rho, -1.5 - sigma) *
              integrate_dual_norm(series, time_window(series, outer), outer.ball(), sigma, 1.0, ws,
                                  [](const Snapshot& s) { return s.pressure; });
      abterm = safe_pow(rho / r, 3.0) * safe_pow(A, ea) * safe_pow(B, eb);
      break;
  }
  auto report = finish_bound(to_string(variant), lhs, {{"pressure", pterm}, {"AB", abterm}});
  report.details = {{"A_rho", A}, {"B_rho", B}};
  return report;
}

}  // namespace nsreg
