#include "nsreg/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsreg/error.hpp"
#include "nsreg/kernels.hpp"

namespace nsreg {

namespace kp = kernels::parallel;

namespace {

const std::vector<std::pair<CriterionTag, const char*>>& tag_names() {
  static const std::vector<std::pair<CriterionTag, const char*>> names{
      {CriterionTag::CKN_L3, "CKN_L3"},       {CriterionTag::CKN_ORIG, "CKN_ORIG"},
      {CriterionTag::VASSEUR_P, "VASSEUR_P"}, {CriterionTag::WZ, "WZ"},
      {CriterionTag::PHUC, "PHUC"},           {CriterionTag::L1_PRESSURE, "L1_PRESSURE"},
      {CriterionTag::ALPHA_BETA, "ALPHA_BETA"}, {CriterionTag::SIGMA, "SIGMA"},
      {CriterionTag::COR_L1_SIGMA, "COR_L1_SIGMA"}, {CriterionTag::SUP_A_SCAN, "SUP_A_SCAN"},
  };
  return names;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// int_{Q_r} g(snapshot, i) over ball points i, with cell-volume quadrature.
double cylinder_integral(const SnapshotSeries& series, const TimeWindow& w, std::span<const std::size_t> pts,
                         const std::function<double(const Snapshot&, std::size_t)>& g) {
  const double h3 = series.grid().cell_volume();
  return integrate_window(series, w, [&](const Snapshot& s) {
    const auto n = static_cast<long>(pts.size());
    double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (long i = 0; i < n; ++i) acc += g(s, pts[i]);
    return acc * h3;
  });
}

double speed(const Snapshot& s, std::size_t i) {
  const double a = s.velocity[0][i], b = s.velocity[1][i], c = s.velocity[2][i];
  return std::sqrt(a * a + b * b + c * c);
}

}  // namespace

std::string to_string(CriterionTag tag) {
  for (const auto& [t, name] : tag_names())
    if (t == tag) return name;
  return "?";
}

CriterionTag criterion_from_string(const std::string& s) {
  for (const auto& [t, name] : tag_names())
    if (s == name) return t;
  throw ValidationError("unknown criterion '" + s + "'");
}

const std::vector<CriterionTag>& all_criteria() {
  static const std::vector<CriterionTag> all = [] {
    std::vector<CriterionTag> v;
    for (const auto& [t, name] : tag_names()) v.push_back(t);
    return v;
  }();
  return all;
}

void CriterionKind::validate() const {
  switch (tag) {
    case CriterionTag::SIGMA:
    case CriterionTag::COR_L1_SIGMA:
      if (!(sigma >= 0.0 && sigma <= 1.0)) throw ValidationError("criterion " + to_string(tag) + ": sigma must lie in [0, 1]");
      break;
    case CriterionTag::ALPHA_BETA:
      beta_of_alpha(alpha);
      break;
    case CriterionTag::VASSEUR_P:
      if (!(q > 1.0) || !std::isfinite(q)) throw ValidationError("criterion VASSEUR_P: exponent must exceed 1");
      break;
    default:
      break;
  }
}

std::string CriterionKind::param_string() const {
  switch (tag) {
    case CriterionTag::SIGMA:
    case CriterionTag::COR_L1_SIGMA: return "sigma=" + fmt(sigma);
    case CriterionTag::ALPHA_BETA: return "alpha=" + fmt(alpha) + ",beta=" + fmt(beta_of_alpha(alpha));
    case CriterionTag::VASSEUR_P: return "q=" + fmt(q);
    default: return "";
  }
}

CriterionReport evaluate_criterion(const SnapshotSeries& series, const CriterionKind& kind,
                                   const ParabolicCylinder& cyl, double threshold, SpectralWorkspace& ws) {
  kind.validate();
  if (!std::isfinite(threshold)) throw ValidationError("threshold must be finite");
  const double r = cyl.radius;
  const Grid3& g = series.grid();
  const Ball ball = cyl.ball();
  require_ball_fits(g, ball);
  const auto w = time_window(series, cyl);
  const auto pts = ball_indices(g, ball);

  std::vector<NamedValue> comp;
  auto add = [&](const std::string& name, double v) {
    comp.push_back({name, v});
    return v;
  };
  auto l1_pressure_power = [&](double power) {
    return integrate_window(series, w, [&](const Snapshot& s) {
      return safe_pow(lq_ball_norm(s.pressure, pts, 1.0), power);
    });
  };

  double stat = 0.0;
  switch (kind.tag) {
    case CriterionTag::CKN_L3: {
      const double u3 = cylinder_integral(series, w, pts, [](const Snapshot& s, std::size_t i) {
        const double v = speed(s, i);
        return v * v * v;
      });
      const double p32 = cylinder_integral(series, w, pts, [](const Snapshot& s, std::size_t i) {
        const double a = std::abs(s.pressure[i]);
        return a * std::sqrt(a);
      });
      stat = add("u3", u3 / (r * r)) + add("p32", p32 / (r * r));
      break;
    }
    case CriterionTag::CKN_ORIG: {
      const double u3 = cylinder_integral(series, w, pts, [](const Snapshot& s, std::size_t i) {
        const double v = speed(s, i);
        return v * v * v;
      });
      const double pu = cylinder_integral(series, w, pts, [](const Snapshot& s, std::size_t i) {
        return std::abs(s.pressure[i]) * speed(s, i);
      });
      stat = add("u3", u3 / (r * r)) + add("pu", pu / (r * r)) +
             add("p_L1_5/4", safe_pow(r, -3.25) * l1_pressure_power(1.25));
      break;
    }
    case CriterionTag::VASSEUR_P: {
      stat = add("A", quantity_A(series, cyl).value) + add("B", quantity_B(series, cyl, ws).value) +
             add("p_L1_q", safe_pow(r, -(kind.q + 2.0)) * l1_pressure_power(kind.q));
      break;
    }
    case CriterionTag::WZ: {
      stat = add("A", quantity_A(series, cyl).value) + add("C_2_1", quantity_C_alphabeta(series, cyl, 2.0, 1.0).value) +
             add("D_2_1", quantity_D_alphabeta(series, cyl, 2.0, 1.0).value);
      break;
    }
    case CriterionTag::PHUC: {
      stat = add("C_6/5_2", quantity_C_alphabeta(series, cyl, 1.2, 2.0).value) +
             add("D_6/5_2", quantity_D_alphabeta(series, cyl, 1.2, 2.0).value);
      break;
    }
    case CriterionTag::L1_PRESSURE: {
      stat = add("A", quantity_A(series, cyl).value) + add("B", quantity_B(series, cyl, ws).value) +
             add("p_L1", safe_pow(r, -3.0) * l1_pressure_power(1.0));
      break;
    }
    case CriterionTag::ALPHA_BETA: {
      const double beta = beta_of_alpha(kind.alpha);
      stat = add("C_alphabeta", quantity_C_alphabeta(series, cyl, kind.alpha, beta).value) +
             add("D_alphabeta", quantity_D_alphabeta(series, cyl, kind.alpha, beta).value);
      break;
    }
    case CriterionTag::SIGMA: {
      stat = add("C_sigma", quantity_C_sigma(series, cyl, kind.sigma, ws).value) +
             add("D_sigma", quantity_D_sigma(series, cyl, kind.sigma, ws).value);
      break;
    }
    case CriterionTag::COR_L1_SIGMA: {
      const double pd = integrate_dual_norm(series, w, ball, kind.sigma, 1.0, ws,
                                            [](const Snapshot& s) { return s.pressure; });
      stat = add("A", quantity_A(series, cyl).value) + add("B", quantity_B(series, cyl, ws).value) +
             add("p_dual", safe_pow(r, -(1.5 + kind.sigma)) * pd);
      break;
    }
    case CriterionTag::SUP_A_SCAN: {
      std::vector<double> radii;
      for (int k = 0; k < 4; ++k) radii.push_back(r * std::ldexp(1.0, -k));
      const SupAScan scan = sup_A_scan(series, cyl.center, cyl.time, radii);
      bool any = false;
      for (const auto& row : scan.rows) {
        if (row.A) {
          any = true;
          add("A(r=" + fmt(row.radius) + ")", *row.A);
        }
      }
      if (!any) throw WindowError("SUP_A_SCAN: no radius has a usable window", series.times());
      stat = scan.max_A;
      break;
    }
  }
  return {kind, cyl, stat, threshold, stat <= threshold, std::move(comp)};
}

EnergyResidual energy_inequality_residual(const SnapshotSeries& series, const TestFunction& phi, double t_end,
                                          SpectralWorkspace& ws, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ValidationError("energy residual: viscosity must be positive");
  const long end = series.find_time(t_end);
  if (end < 0) throw ValidationError("energy residual: t_end = " + fmt(t_end) + " is not a snapshot time");
  const double a = phi.start_time();
  const double slack = 1e-12 * std::max(1.0, std::abs(a));
  if (series.first_time() > a + slack)
    throw ValidationError("energy residual: series starts at " + fmt(series.first_time()) +
                          " after the test function switches on at " + fmt(a));
  if (!(t_end > a)) throw ValidationError("energy residual: t_end must follow the test function start");

  const Grid3& g = series.grid();
  const double h3 = g.cell_volume();
  const auto n = static_cast<long>(g.size());

  // Integrands at one snapshot: (|grad u|^2 phi, rhs integrand).
  auto integrands = [&](const Snapshot& s) {
    const PhiFields f = phi.sample(g, s.time);
    const VectorField3& u = s.velocity;
    ScalarField3 grad2(g);
    for (int c = 0; c < 3; ++c) {
      const VectorField3 gu = gradient(u[c], ws);
      for (int d = 0; d < 3; ++d) {
        const auto v = gu[d].values();
        auto o = grad2.values();
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) o[i] += v[i] * v[i];
      }
    }
    double dissip = 0.0, rhs = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : dissip, rhs)
    for (long i = 0; i < n; ++i) {
      const double u0 = u[0][i], u1 = u[1][i], u2 = u[2][i];
      const double q = u0 * u0 + u1 * u1 + u2 * u2;
      dissip += grad2[i] * f.value[i];
      const double flux = u0 * f.grad[0][i] + u1 * f.grad[1][i] + u2 * f.grad[2][i];
      rhs += q * (f.dt[i] + nu * f.lap[i]) + (q + 2.0 * s.pressure[i]) * flux;
    }
    return std::pair{dissip * h3, rhs * h3};
  };

  double t_prev = a, d_prev = 0.0, r_prev = 0.0;
  double dissip_int = 0.0, rhs_int = 0.0;
  for (long k = 0; k <= end; ++k) {
    const Snapshot& s = series[static_cast<std::size_t>(k)];
    if (s.time <= a + slack) continue;
    const auto [d, rr] = integrands(s);
    const double dt = s.time - t_prev;
    dissip_int += 0.5 * dt * (d_prev + d);
    rhs_int += 0.5 * dt * (r_prev + rr);
    t_prev = s.time;
    d_prev = d;
    r_prev = rr;
  }

  const Snapshot& last = series[static_cast<std::size_t>(end)];
  const PhiFields f = phi.sample(g, last.time);
  const ScalarField3 q = last.velocity.norm_squared();
  const double kinetic = kp::dot(q.values(), f.value.values()) * h3;
  const double lhs = kinetic + 2.0 * nu * dissip_int;
  return {lhs, rhs_int, rhs_int - lhs};
}

BoundReport energy_bound_check(const SnapshotSeries& series, const ParabolicCylinder& cyl, double sigma,
                               SpectralWorkspace& ws) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw ValidationError("energy bound: sigma must lie in [0, 1]");
  const double r = cyl.radius;
  const ParabolicCylinder half{cyl.center, cyl.time, r / 2.0};
  const double A = quantity_A(series, half).value;
  const double B = quantity_B(series, half, ws).value;
  const double C = quantity_C_sigma(series, cyl, sigma, ws).value;
  const double power = 2.0 / (2.0 - sigma);
  const double Y = integrate_dual_norm(series, time_window(series, cyl), cyl.ball(), sigma, power, ws,
                                       [](const Snapshot& s) {
                                         ScalarField3 q = s.velocity.norm_squared();
                                         for (std::size_t i = 0; i < q.size(); ++i) q[i] += 2.0 * s.pressure[i];
                                         return q;
                                       });
  const double t1 = safe_pow(C, (2.0 - sigma) / 2.0);
  const double t2 = safe_pow(safe_pow(r, -3.0 / (2.0 - sigma)) * Y, 2.0 - sigma);
  auto report = finish_bound("energy", A + B, {{"C_sigma", t1}, {"head_pressure", t2}});
  report.details = {{"A_half", A}, {"B_half", B}, {"C_sigma_r", C}, {"Y", Y}};
  return report;
}

BoundReport cubic_bound_check(const SnapshotSeries& series, const ParabolicCylinder& cyl, double rho,
                              SpectralWorkspace& ws) {
  const double r = cyl.radius;
  if (!(r > 0.0) || !(rho >= r * (1.0 - 1e-12)) || !std::isfinite(rho))
    throw ValidationError("cubic bound: requires 0 < r <= rho");
  const Grid3& g = series.grid();
  const auto pts = ball_indices(g, cyl.ball());
  const auto w = time_window(series, cyl);
  const double u3 = cylinder_integral(series, w, pts, [](const Snapshot& s, std::size_t i) {
    const double v = speed(s, i);
    return v * v * v;
  });
  const ParabolicCylinder outer{cyl.center, cyl.time, rho};
  const double A = quantity_A(series, outer).value;
  const double B = quantity_B(series, outer, ws).value;
  const double t1 = safe_pow(rho / r, 3.0) * safe_pow(A, 0.75) * safe_pow(B, 0.75);
  const double t2 = safe_pow(r / rho, 3.0) * safe_pow(A, 1.5);
  auto report = finish_bound("cubic", u3 / (r * r), {{"AB", t1}, {"A", t2}});
  report.details = {{"A_rho", A}, {"B_rho", B}};
  return report;
}

SupAScan sup_A_scan(const SnapshotSeries& series, const Point3& center, double t0, const std::vector<double>& radii) {
  SupAScan scan;
  for (double r : radii) {
    SupARow row{r, std::nullopt, {}};
    try {
      if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("radius must be positive");
      row.A = quantity_A(series, {center, t0, r}).value;
      scan.max_A = std::max(scan.max_A, *row.A);
    } catch (const Error& e) {
      row.error = e.what();
    }
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

}  // namespace nsreg
