#include "nsreg/solver.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "nsreg/error.hpp"

namespace nsreg {

namespace {

using cplx = std::complex<double>;
using Spec = std::array<std::vector<cplx>, 3>;

class Integrator {
 public:
  Integrator(const SolverConfig& cfg, SpectralWorkspace& ws) : cfg_(cfg), ws_(ws), n_(ws.grid().n()) {
    const std::size_t ns = ws.spectral_size();
    const auto k2 = ws.k_squared();
    e_full_.resize(ns);
    e_half_.resize(ns);
    keep_.resize(ns);
    const double cut = n_ / 3.0;
    ws.for_each_mode([&](std::size_t idx, int i, int j, int k) {
      e_full_[idx] = std::exp(-cfg.viscosity * k2[idx] * cfg.dt);
      e_half_[idx] = std::exp(-0.5 * cfg.viscosity * k2[idx] * cfg.dt);
      const int mi = i <= n_ / 2 ? i : i - n_;
      const int mj = j <= n_ / 2 ? j : j - n_;
      const bool inside = std::abs(mi) <= cut && std::abs(mj) <= cut && k <= cut;
      keep_[idx] = cfg.dealias ? (inside ? 1.0 : 0.0) : 1.0;
    });
  }

  Spec to_spectral(const VectorField3& u) {
    Spec s;
    for (int a = 0; a < 3; ++a) {
      ws_.forward(u[a].values());
      const auto sp = ws_.spectrum();
      s[a].assign(sp.begin(), sp.end());
    }
    return s;
  }

  VectorField3 to_physical(const Spec& s) {
    VectorField3 u(ws_.grid());
    for (int a = 0; a < 3; ++a) inverse(s[a], u[a].values());
    return u;
  }

  void inverse(const std::vector<cplx>& s, std::span<double> out) {
    auto sp = ws_.spectrum();
    std::copy(s.begin(), s.end(), sp.begin());
    ws_.inverse(out);
  }

  void project(Spec& s) const {
    ws_.for_each_mode([&](std::size_t idx, int i, int j, int k) {
      const double kx = ws_.k_odd(Axis::x, i), ky = ws_.k_odd(Axis::y, j), kz = ws_.k_odd(Axis::z, k);
      const double kk = kx * kx + ky * ky + kz * kz;
      if (kk == 0.0) return;
      const cplx d = (kx * s[0][idx] + ky * s[1][idx] + kz * s[2][idx]) / kk;
      s[0][idx] -= kx * d;
      s[1][idx] -= ky * d;
      s[2][idx] -= kz * d;
    });
  }

  // P dealias(u x omega)
  Spec nonlinear(const Spec& uh) {
    const std::size_t ns = uh[0].size();
    Spec out{std::vector<cplx>(ns), std::vector<cplx>(ns), std::vector<cplx>(ns)};
    if (!cfg_.nonlinear) return out;
    Spec wh{std::vector<cplx>(ns), std::vector<cplx>(ns), std::vector<cplx>(ns)};
    const cplx I(0.0, 1.0);
    ws_.for_each_mode([&](std::size_t idx, int i, int j, int k) {
      const double kx = ws_.k_odd(Axis::x, i), ky = ws_.k_odd(Axis::y, j), kz = ws_.k_odd(Axis::z, k);
      wh[0][idx] = I * (ky * uh[2][idx] - kz * uh[1][idx]);
      wh[1][idx] = I * (kz * uh[0][idx] - kx * uh[2][idx]);
      wh[2][idx] = I * (kx * uh[1][idx] - ky * uh[0][idx]);
    });
    std::array<std::vector<double>, 3> u, w;
    const std::size_t nr = ws_.grid().size();
    for (int a = 0; a < 3; ++a) {
      u[a].resize(nr);
      w[a].resize(nr);
      inverse(uh[a], u[a]);
      inverse(wh[a], w[a]);
    }
    std::vector<double> c(nr);
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3, d = (a + 2) % 3;
      const auto n = static_cast<long>(nr);
#pragma omp parallel for schedule(static)
      for (long i = 0; i < n; ++i) c[i] = u[b][i] * w[d][i] - u[d][i] * w[b][i];
      ws_.forward(c);
      const auto sp = ws_.spectrum();
      for (std::size_t i = 0; i < ns; ++i) out[a][i] = sp[i] * keep_[i];
    }
    project(out);
    return out;
  }

  Spec advance(const Spec& u0) {
    const double dt = cfg_.dt;
    const std::size_t ns = u0[0].size();
    auto combine = [&](auto&& f) {
      Spec s{std::vector<cplx>(ns), std::vector<cplx>(ns), std::vector<cplx>(ns)};
      for (int a = 0; a < 3; ++a)
        for (std::size_t i = 0; i < ns; ++i) s[a][i] = f(a, i);
      return s;
    };
    const Spec k1 = nonlinear(u0);
    const Spec k2 = nonlinear(combine([&](int a, std::size_t i) { return e_half_[i] * (u0[a][i] + 0.5 * dt * k1[a][i]); }));
    const Spec k3 = nonlinear(combine([&](int a, std::size_t i) { return e_half_[i] * u0[a][i] + 0.5 * dt * k2[a][i]; }));
    const Spec k4 = nonlinear(
        combine([&](int a, std::size_t i) { return e_full_[i] * u0[a][i] + dt * e_half_[i] * k3[a][i]; }));
    Spec out = combine([&](int a, std::size_t i) {
      return e_full_[i] * u0[a][i] +
             dt / 6.0 * (e_full_[i] * k1[a][i] + 2.0 * e_half_[i] * (k2[a][i] + k3[a][i]) + k4[a][i]);
    });
    project(out);
    return out;
  }

 private:
  const SolverConfig& cfg_;
  SpectralWorkspace& ws_;
  int n_;
  std::vector<double> e_full_, e_half_, keep_;
};

void check_cfl(const VectorField3& u, const SolverConfig& cfg) {
  const double h = u.grid().spacing();
  const double umax = u.max_norm();
  if (!std::isfinite(umax)) throw SolverAbort("non-finite velocity");
  if (umax * cfg.dt > 0.5 * h) {
    throw SolverAbort("CFL violation: dt = " + std::to_string(cfg.dt) + " exceeds 0.5 h / max|u| = " +
                      std::to_string(0.5 * h / umax));
  }
}

VectorField3 finite_or_abort(VectorField3 u) {
  for (int a = 0; a < 3; ++a)
    for (double v : u[a].values())
      if (!std::isfinite(v)) throw SolverAbort("velocity became non-finite");
  return u;
}

// Physical-space fields reject NaN on construction, so build them only after checking.
VectorField3 to_physical_checked(Integrator& in, const Spec& s) {
  for (const auto& c : s)
    for (const cplx& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw SolverAbort("velocity became non-finite");
  return finite_or_abort(in.to_physical(s));
}

}  // namespace

long SolverConfig::steps() const { return std::lround(t_end / dt); }

void SolverConfig::validate() const {
  Grid3(n, box_len);
  if (!(viscosity > 0.0) || !std::isfinite(viscosity)) throw ValidationError("viscosity must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ValidationError("t_end must be nonnegative");
  if (output_every < 1) throw ValidationError("output_every must be >= 1");
}

VectorField3 taylor_green_init(const Grid3& grid) {
  const double k = 2.0 * std::numbers::pi / grid.box_len();
  return VectorField3(
      ScalarField3::from_function(grid, [k](double x, double y, double z) {
        return std::cos(k * x) * std::sin(k * y) * std::sin(k * z);
      }),
      ScalarField3::from_function(grid, [k](double x, double y, double z) {
        return -std::sin(k * x) * std::cos(k * y) * std::sin(k * z);
      }),
      ScalarField3(grid));
}

VectorField3 step(const VectorField3& state, const SolverConfig& cfg, SpectralWorkspace& ws) {
  cfg.validate();
  if (!(state.grid() == ws.grid())) throw ValidationError("step: workspace grid mismatch");
  check_cfl(state, cfg);
  Integrator in(cfg, ws);
  return to_physical_checked(in, in.advance(in.to_spectral(state)));
}

SnapshotSeries run(const SolverConfig& cfg, const VectorField3& u0) {
  cfg.validate();
  const Grid3 grid = cfg.grid();
  if (!(u0.grid() == grid)) throw ValidationError("run: initial data grid does not match the configuration");
  SpectralWorkspace ws(grid);
  Integrator in(cfg, ws);
  std::vector<Snapshot> snaps;
  snaps.push_back({0.0, u0, pressure_from_velocity(u0, ws)});
  Spec uh = in.to_spectral(u0);
  VectorField3 u = u0;
  const long steps = cfg.steps();
  for (long s = 1; s <= steps; ++s) {
    check_cfl(u, cfg);
    uh = in.advance(uh);
    u = to_physical_checked(in, uh);
    if (s % cfg.output_every == 0) {
      snaps.push_back({static_cast<double>(s) * cfg.dt, u, pressure_from_velocity(u, ws)});
    }
  }
  return SnapshotSeries(grid, std::move(snaps));
}

SnapshotSeries run(const SolverConfig& cfg) { return run(cfg, taylor_green_init(cfg.grid())); }

double mean_kinetic_energy(const VectorField3& u) {
  const ScalarField3 q = u.norm_squared();
  return 0.5 * q.mean();
}

}  // namespace nsreg
