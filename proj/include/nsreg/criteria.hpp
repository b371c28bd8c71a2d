#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsreg/pressure.hpp"
#include "nsreg/quantities.hpp"
#include "nsreg/test_function.hpp"

namespace nsreg {

enum class CriterionTag {
  CKN_L3,
  CKN_ORIG,
  VASSEUR_P,
  WZ,
  PHUC,
  L1_PRESSURE,
  ALPHA_BETA,
  SIGMA,
  COR_L1_SIGMA,
  SUP_A_SCAN,
};

std::string to_string(CriterionTag tag);
CriterionTag criterion_from_string(const std::string& s);
const std::vector<CriterionTag>& all_criteria();

inline constexpr double kDefaultThreshold = 0.05;

struct CriterionKind {
  CriterionTag tag = CriterionTag::CKN_L3;
  double sigma = 0.5;   // SIGMA, COR_L1_SIGMA
  double alpha = 1.5;   // ALPHA_BETA; beta = beta_of_alpha(alpha)
  double q = 1.25;      // VASSEUR_P pressure exponent, > 1

  /// Throws ValidationError when the parameter for this tag is out of range.
  void validate() const;
  /// Parameter echo, e.g. "sigma=0.5" or "alpha=1.5,beta=1.333..."; empty when unused.
  std::string param_string() const;
};

struct CriterionReport {
  CriterionKind kind;
  ParabolicCylinder cylinder;
  double statistic = 0.0;
  double threshold = kDefaultThreshold;
  bool satisfied = true;
  std::vector<NamedValue> components;
};

/// Statistic of the tag on Q_r(z0), normalized through the scale-invariant quantities
/// so that it equals the unit-cylinder expression after rescaling:
///   CKN_L3       r^-2 int int (|u|^3 + |p|^{3/2})
///   CKN_ORIG     r^-2 int int (|u|^3 + |p||u|) + r^{-13/4} int ||p||_{L1}^{5/4}
///   VASSEUR_P    A + B + r^{-(q+2)} int ||p||_{L1}^q
///   WZ           A + C_{2,1} + D_{2,1}
///   PHUC         C_{6/5,2} + D_{6/5,2}
///   L1_PRESSURE  A + B + r^-3 int ||p||_{L1}
///   ALPHA_BETA   C_{a,b(a)} + D_{a,b(a)}
///   SIGMA        C_sigma + D_sigma
///   COR_L1_SIGMA A + B + r^{-(3/2+sigma)} int ||p||_{L^{-sigma,2}}
///   SUP_A_SCAN   max_k A(z0, r 2^-k), k = 0..3, over radii whose window is nonempty
CriterionReport evaluate_criterion(const SnapshotSeries& series, const CriterionKind& kind,
                                   const ParabolicCylinder& cyl, double threshold, SpectralWorkspace& ws);

struct EnergyResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // rhs - lhs
};

/// Local energy balance against phi from start_time() of phi to t_end:
///   lhs = int |u(t_end)|^2 phi + 2 nu int int |grad u|^2 phi
///   rhs = int int |u|^2 (phi_t + nu Delta phi) + (|u|^2 + 2p) u . grad phi
/// Time integrals are trapezoidal over the snapshots, starting from the zero integrand
/// at the start time. t_end must be a snapshot time and the series must reach back to
/// the start time.
EnergyResidual energy_inequality_residual(const SnapshotSeries& series, const TestFunction& phi, double t_end,
                                          SpectralWorkspace& ws, double nu = 1.0);

/// lhs = A(z0, r/2) + B(z0, r/2);
/// terms C_sigma(z0, r)^{(2-sigma)/2} and [r^{-3/(2-sigma)} int || |u|^2 + 2p ||_{L^{-sigma,2}(B_r)}^{2/(2-sigma)}]^{2-sigma}.
BoundReport energy_bound_check(const SnapshotSeries& series, const ParabolicCylinder& cyl, double sigma,
                               SpectralWorkspace& ws);

/// lhs = r^-2 int_{Q_r} |u|^3; terms (rho/r)^3 A(rho)^{3/4} B(rho)^{3/4} and (r/rho)^3 A(rho)^{3/2}.
BoundReport cubic_bound_check(const SnapshotSeries& series, const ParabolicCylinder& cyl, double rho,
                              SpectralWorkspace& ws);

struct SupARow {
  double radius = 0.0;
  std::optional<double> A;
  std::string error;  // set when A is absent
};

struct SupAScan {
  double max_A = 0.0;
  std::vector<SupARow> rows;
};

/// A(z0, r) for each radius; window or ball errors are recorded per row and the scan continues.
SupAScan sup_A_scan(const SnapshotSeries& series, const Point3& center, double t0, const std::vector<double>& radii);

}  // namespace nsreg
