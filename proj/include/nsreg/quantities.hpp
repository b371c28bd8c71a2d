#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nsreg/norms.hpp"
#include "nsreg/series.hpp"
#include "nsreg/spectral.hpp"

namespace nsreg {

enum class QuantityKind { A, B, C_sigma, C_alphabeta, D_sigma, D_alphabeta };

std::string to_string(QuantityKind kind);

struct QuantityValue {
  QuantityKind kind;
  double value = 0.0;
  ParabolicCylinder cylinder;
  std::vector<double> params;  // {sigma} or {alpha, beta}; empty for A and B
  int snapshots_used = 0;
};

/// Snapshots inside [t0 - r^2, t0] with time-integration weights.
///
/// Weights are the trapezoid rule between consecutive snapshots, with the first
/// and last values held constant out to the window ends, so they always sum to
/// r^2. A single snapshot gets the whole window length.
struct TimeWindow {
  std::vector<std::size_t> indices;
  std::vector<double> weights;
};

/// Throws WindowError listing the series times when the window holds no snapshot.
TimeWindow time_window(const SnapshotSeries& series, const ParabolicCylinder& cyl);

/// sum_i w_i g(snapshot_i) over the window.
double integrate_window(const SnapshotSeries& series, const TimeWindow& window,
                        const std::function<double(const Snapshot&)>& g);

/// A = max over window snapshots of r^{-1} int_B |u|^2.
QuantityValue quantity_A(const SnapshotSeries& series, const ParabolicCylinder& cyl);
/// B = r^{-1} int int_B |grad u|^2, gradients spectral.
QuantityValue quantity_B(const SnapshotSeries& series, const ParabolicCylinder& cyl, SpectralWorkspace& ws);
/// C_sigma = r^{-3/(2-sigma)} int || |u|^2 ||_{L^{-sigma,2}(B)}^{2/(2-sigma)}, sigma in [0, 1].
QuantityValue quantity_C_sigma(const SnapshotSeries& series, const ParabolicCylinder& cyl, double sigma,
                               SpectralWorkspace& ws);
/// C_{alpha,beta} = r^{-3 beta/2} int ||u||_{L^{2 alpha}(B)}^{2 beta}, alpha, beta >= 1.
QuantityValue quantity_C_alphabeta(const SnapshotSeries& series, const ParabolicCylinder& cyl, double alpha,
                                   double beta);
/// D_sigma: C_sigma with p in place of |u|^2.
QuantityValue quantity_D_sigma(const SnapshotSeries& series, const ParabolicCylinder& cyl, double sigma,
                               SpectralWorkspace& ws);
/// D_{alpha,beta} = r^{-3 beta/2} int ||p||_{L^alpha(B)}^beta, alpha, beta >= 1.
QuantityValue quantity_D_alphabeta(const SnapshotSeries& series, const ParabolicCylinder& cyl, double alpha,
                                   double beta);

/// 4 alpha / (7 alpha - 6) for alpha in [6/5, 2].
double beta_of_alpha(double alpha);

/// Time integral of a ball dual norm, int ||g(snapshot)||_{L^{-sigma,2}(B)}^power, sharing one solver.
/// Convergence failures are rethrown with the snapshot time in the message.
double integrate_dual_norm(const SnapshotSeries& series, const TimeWindow& window, const Ball& ball,
                           double sigma, double power, SpectralWorkspace& ws,
                           const std::function<ScalarField3(const Snapshot&)>& g);

}  // namespace nsreg
