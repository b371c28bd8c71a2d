#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "nsreg/field.hpp"
#include "nsreg/spectral.hpp"

namespace nsreg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum over ball points of |f|^q h^3)^{1/q}; q = kInfinity gives the max over the ball.
/// Returns 0 for an empty discrete ball. Throws ValidationError for q < 1.
double lq_ball_norm(const ScalarField3& f, const Ball& ball, double q);
/// Same, reusing precomputed ball indices.
double lq_ball_norm(const ScalarField3& f, std::span<const std::size_t> ball_points, double q);

/// Homogeneous Sobolev norm (int |k|^{2 sigma} |f_hat|^2)^{1/2}, Parseval-normalized so that
/// sigma = 0 gives the L2 norm of f - mean f. sigma must lie in [-3, 3].
double hsigma_norm(const ScalarField3& f, double sigma, SpectralWorkspace& ws);

/// Parameters of a discrete L^{-sigma,2}(B) evaluation.
struct DualNormProblem {
  Ball ball;
  double sigma = 0.5;
  double tolerance = 1e-10;
  int max_iter = 2000;

  /// Throws ValidationError unless sigma in [0, 3/2), tolerance in (0, 1), max_iter >= 1.
  void validate() const;
};

struct DualNormResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;  // final relative residual of the CG solve
};

/// Discrete dual norm
///
///   ||f||_{L^{-sigma,2}(B)} = sup { sum_B f phi h^3 : supp phi in B, ||phi||_{H^sigma} <= 1 }
///                          = sqrt( h^3 f_B . K_B^{-1} f_B ),
///
/// where K_B = M (-Delta)^sigma M is the spectral Gram operator restricted to
/// grid functions supported on the ball's grid points. K_B^{-1} f_B is applied
/// by Jacobi-preconditioned conjugate gradients stopped at relative residual
/// <= tolerance. For sigma = 0 the value is lq_ball_norm(f, ball, 2) with no solve.
///
/// The solver owns the multiplier and ball index set, so one instance serves
/// many fields on the same (grid, ball, sigma); it optionally warm-starts from
/// the previous solution. Throws ConvergenceError when max_iter is reached.
class DualNormSolver {
 public:
  DualNormSolver(SpectralWorkspace& ws, DualNormProblem problem);

  DualNormResult solve(const ScalarField3& f);

  void set_warm_start(bool on) noexcept { warm_start_ = on; }
  const DualNormProblem& problem() const noexcept { return problem_; }
  std::span<const std::size_t> ball_points() const noexcept { return ball_; }

  /// y = K_B x for compact ball vectors (exposed for tests).
  void apply(std::span<const double> x, std::span<double> y);

 private:
  SpectralWorkspace* ws_;
  DualNormProblem problem_;
  std::vector<std::size_t> ball_;
  std::vector<double> multiplier_;  // |k|^{2 sigma}, zero mode 0
  double diagonal_ = 1.0;
  std::vector<double> full_;        // full-grid scatter buffer, zero off the ball
  std::vector<double> previous_;
  bool warm_start_ = false;
};

DualNormResult dual_norm(const ScalarField3& f, const DualNormProblem& problem, SpectralWorkspace& ws);

/// One row of the oscillation probe.
struct OscillationRow {
  int n = 0;
  double signed_norm = 0.0;    // dual norm of f
  double absolute_norm = 0.0;  // dual norm of |f|
  int signed_iterations = 0;
  int absolute_iterations = 0;
};

struct OscillationProbeOptions {
  double radius = 1.0;   // ball radius; the singularity sits at the ball center
  double box_len = 4.0;  // periodic box, >= 4 * radius
  double tolerance = 1e-10;
  int max_iter = 4000;
};

/// Samples g(x - center) on the grid with the box center as singular point;
/// the grid point at the singularity takes the average of its 6 neighbours.
ScalarField3 sample_with_regularized_center(const Grid3& grid,
                                            const std::function<double(const Point3&)>& g);

/// |x|^{-eps-s} sin(|x|^{-eps}) (or its absolute value) centred in the box.
ScalarField3 oscillation_field(const Grid3& grid, double s, double eps, bool absolute);

/// Dual norms of f and |f| on the centred ball across resolutions, for
/// f(x) = |x|^{-eps-s} sin(|x|^{-eps}).
std::vector<OscillationRow> oscillation_probe(double s, double eps, double sigma,
                                              std::span<const int> resolutions,
                                              const OscillationProbeOptions& options = {});

/// Same table for an arbitrary radial profile g(x - center) and its absolute value.
std::vector<OscillationRow> oscillation_probe_with(const std::function<double(const Point3&)>& g,
                                                   double sigma, std::span<const int> resolutions,
                                                   const OscillationProbeOptions& options = {});

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs, 0 when lhs == 0
};

/// Sobolev interpolation on a ball for g = f - mean_B f:
///   lhs = int_B |g|^q,  rhs = (int_B |grad f|^2)^{3q/4-3/2} (int_B |g|^2)^{3/2-q/4}   (C(q) = 1).
/// q must lie in [2, 6].
InequalitySides mean_zero_interpolation_check(const ScalarField3& f, const Ball& ball, double q,
                                              SpectralWorkspace& ws);

/// x^p with x == 0 -> 0 and a log-space path for x < 1e-300.
double safe_pow(double x, double p);

}  // namespace nsreg
