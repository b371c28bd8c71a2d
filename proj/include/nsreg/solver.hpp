#pragma once

#include "nsreg/series.hpp"
#include "nsreg/spectral.hpp"

namespace nsreg {

struct SolverConfig {
  int n = 32;
  double box_len = 6.283185307179586;
  double viscosity = 0.1;
  double dt = 0.005;
  double t_end = 1.0;
  int output_every = 20;
  bool dealias = true;
  bool nonlinear = true;  // test hook: false gives the Stokes (heat) flow

  Grid3 grid() const { return Grid3(n, box_len); }
  /// Number of steps, round(t_end / dt).
  long steps() const;
  /// Throws ValidationError on non-positive dt, viscosity, output_every or negative t_end.
  void validate() const;
};

/// (cos kx sin ky sin kz, -sin kx cos ky sin kz, 0), k = 2 pi / L.
VectorField3 taylor_green_init(const Grid3& grid);

/// One integrating-factor RK4 step of the rotational-form equations with
/// 2/3-rule dealiasing and a Leray projection at every stage.
/// Throws SolverAbort when dt exceeds 0.5 h / max|u| or the state stops being finite.
VectorField3 step(const VectorField3& state, const SolverConfig& cfg, SpectralWorkspace& ws);

/// Integrates from u0 at t = 0, storing every output_every-th step with its pressure.
SnapshotSeries run(const SolverConfig& cfg, const VectorField3& u0);
/// Same from Taylor-Green data.
SnapshotSeries run(const SolverConfig& cfg);

/// (1/2) mean |u|^2.
double mean_kinetic_energy(const VectorField3& u);

}  // namespace nsreg
