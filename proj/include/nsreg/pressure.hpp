#pragma once

#include <string>
#include <vector>

#include "nsreg/norms.hpp"
#include "nsreg/series.hpp"
#include "nsreg/spectral.hpp"

namespace nsreg {

/// Quadrature average of f over the discrete ball; ValidationError if the ball holds no grid point.
double spatial_mean(const ScalarField3& f, const Ball& ball);

struct PressureSplit {
  Ball ball;
  ScalarField3 p_tilde;
  ScalarField3 h;                 // p - p_tilde on the whole grid; contractual inside the ball
  double harmonic_residual = 0.0; // max |Delta h| on the 0.9-shrunk ball / (||p||_inf + 1e-300)
};

/// p_tilde = R_i R_j [(u_i - [u_i]) (u_j - [u_j]) chi_B], h = p - p_tilde.
/// Requires ball radius <= box_len / 4.
PressureSplit split_pressure(const VectorField3& u, const ScalarField3& p, const Ball& ball,
                             SpectralWorkspace& ws);

struct NamedValue {
  std::string name;
  double value = 0.0;
  bool operator==(const NamedValue&) const = default;
};

/// Both sides of an inequality with unit constants.
/// empirical_C = lhs / rhs; 0 when lhs == 0; +inf with violation = true when rhs == 0 < lhs.
struct BoundReport {
  std::string label;
  double lhs = 0.0;
  std::vector<NamedValue> terms;
  double rhs = 0.0;
  double empirical_C = 0.0;
  bool violation = false;
  std::vector<NamedValue> details;  // supporting values, not part of rhs
};

/// Fills rhs, empirical_C and violation from lhs and terms.
BoundReport finish_bound(std::string label, double lhs, std::vector<NamedValue> terms);

/// lhs = ||h||_{L2(B_r)}, rhs = r^{-sigma} ||h||_{L^{-sigma,2}(B_2r)}.
InequalitySides harmonic_dual_bound_check(const ScalarField3& h, const Ball& ball, double sigma,
                                          SpectralWorkspace& ws);

enum class PressureBound { p, pbar, DDtiti };

std::string to_string(PressureBound variant);
/// Parses "p", "pbar", "DDtiti" (optionally prefixed with "eq-").
PressureBound pressure_bound_from_string(const std::string& s);

/// Exponents (a, b) of the A^a B^b term.
std::pair<double, double> pressure_bound_exponents(PressureBound variant, double sigma);

/// Local pressure bounds on Q_r(z0) inside Q_rho(z0), r <= rho / 2:
///   p:      r^{-3/2} int ||p||_{L2(B_r)}              vs rho^{-3} int ||p||_{L1(B_rho)}
///   pbar:   r^{-3/2} int ||p - [p]_r||_{L2(B_r)}      vs (r/rho) rho^{-3} int ||p - [p]_rho||_{L1(B_rho)}
///   DDtiti: r^{-3} int ||p||_{L1(B_r)}                vs rho^{-3/2-sigma} int ||p||_{L^{-sigma,2}(B_rho)}
/// each plus (rho/r)^{3/2} A(rho)^{1/4} B(rho)^{3/4} (DDtiti: (rho/r)^3 A^{1/4+sigma/2} B^{3/4-sigma/2}).
BoundReport pressure_bound_check(const SnapshotSeries& series, const ParabolicCylinder& inner, double rho,
                                 PressureBound variant, double sigma, SpectralWorkspace& ws);

}  // namespace nsreg
