// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nsreg/cli.hpp"
#include "nsreg/criteria.hpp"
#include "nsreg/error.hpp"
#include "nsreg/norms.hpp"
#include "nsreg/pressure.hpp"
#include "nsreg/quantities.hpp"
#include "nsreg/reference.hpp"
#include "nsreg/solver.hpp"
#include "nsreg/spectral.hpp"
#include "nsreg/test_function.hpp"
#include "scaling.hpp"
#include "support.hpp"

using namespace nsreg;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// Shared Taylor-Green runs (nu = 0.1, L = 2 pi) reaching t = 2.5 so that r = L/4 windows fit.
const SnapshotSeries& taylor_green(int n) {
  static std::map<int, SnapshotSeries> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    SolverConfig cfg;
    cfg.n = n;
    cfg.viscosity = 0.1;
    cfg.dt = 0.01;
    cfg.t_end = 2.5;
    cfg.output_every = 5;
    it = cache.emplace(n, run(cfg)).first;
  }
  return it->second;
}

// Errors are relative to the amplitude of the analytic result.
Verdict spectral_exactness() {
  const Grid3 g(32, 2.0);
  SpectralWorkspace ws(g);
  const double k = 2 * M_PI / g.box_len();
  double single = 0.0;
  auto track = [&](const ScalarField3& got, const ScalarField3& want) {
    single = std::max(single, testing::max_abs_diff(got, want) / std::max(want.max_abs(), 1.0));
  };
  const auto s = testing::mode_sin(g, 1, 0, 0);
  const auto c = testing::mode_cos(g, 1, 0, 0);
  track(riesz(s, Axis::x, ws), c);
  track(riesz(s, Axis::y, ws), ScalarField3(g));
  track(riesz(testing::mode_sin(g, 1, 2, 0), Axis::y, ws), testing::mode_cos(g, 1, 2, 0) * (2.0 / std::sqrt(5.0)));
  track(derivative(s, Axis::x, ws), c * k);
  track(derivative(testing::mode_cos(g, 0, 0, 3), Axis::z, ws), testing::mode_sin(g, 0, 0, 3) * (-3 * k));
  const auto s3 = testing::mode_sin(g, 1, 1, 1);
  for (double p : {-2.0, -0.5, 0.5, 1.0, 2.0}) track(frac_laplacian(s3, p, ws), s3 * std::pow(3 * k * k, p / 2));

  testing::Gen gen(1001);
  double dsum = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto f = testing::without_nyquist(gen.noise(g), ws) + ScalarField3::constant(g, gen.uniform(-2, 2));
    ScalarField3 target = f * -1.0;
    const double m = f.mean();
    for (double& v : target.values()) v += m;
    dsum = std::max(dsum, testing::max_abs_diff(riesz_double_sum(f, ws), target));
  }
  return {single < 1e-12 && dsum < 1e-10,
          "single-mode max relative error " + fmt(single) + " (< 1e-12), double Riesz sum max error " + fmt(dsum) +
              " (< 1e-10)"};
}

Verdict dual_norm_oracle() {
  const Grid3 g(16, 2.0);
  SpectralWorkspace ws(g);
  testing::Gen gen(1002);
  double worst = 0.0;
  int cases = 0;
  for (int i = 0; i < 20; ++i) {
    const auto f = gen.noise(g);
    const Ball b(gen.point(2.0), gen.uniform(0.4, 0.75));
    for (double sigma : {0.25, 0.5, 1.0}) {
      const double cg = dual_norm(f, {b, sigma}, ws).value;
      worst = std::max(worst, rel_err(cg, reference::dense_dual_norm(f, b, sigma)));
      ++cases;
    }
  }
  return {worst <= 1e-8, std::to_string(cases) + " cases, max relative error " + fmt(worst) + " (<= 1e-8)"};
}

Verdict sigma_zero() {
  testing::Gen gen(1003);
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const Grid3 g(gen.integer(0, 2) == 0 ? 8 : 16, gen.uniform(1.0, 4.0));
    SpectralWorkspace ws(g);
    const auto f = gen.noise(g);
    const Ball b(gen.point(g.box_len()), gen.uniform(0.1, 0.5) * g.box_len());
    if (dual_norm(f, {b, 0.0}, ws).value != lq_ball_norm(f, b, 2.0)) ++mismatches;
  }
  return {mismatches == 0, "50 cases, " + std::to_string(mismatches) + " differ from the ball L2 norm"};
}

Verdict interpolation() {
  testing::Gen gen(1004);
  const Grid3 g(16, 2.0);
  SpectralWorkspace ws(g);
  double worst = 1.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = gen.integer(0, 1) ? gen.noise(g) : gen.smooth(g, 6);
    const double s0 = gen.uniform(-2, 2), s1 = gen.uniform(-2, 2), th = gen.uniform(0, 1);
    const double lhs = hsigma_norm(f, (1 - th) * s0 + th * s1, ws);
    const double rhs = std::pow(hsigma_norm(f, s0, ws), 1 - th) * std::pow(hsigma_norm(f, s1, ws), th);
    worst = std::min(worst, (rhs - lhs) / rhs);
  }
  double shell = 0.0;
  for (int i = 0; i < 10; ++i) {
    // |m|^2 = 3 shell
    const auto f = testing::mode_sin(g, 1, 1, 1) * gen.uniform(-1, 1) + testing::mode_cos(g, 1, -1, 1) * gen.uniform(-1, 1) +
                   testing::mode_sin(g, -1, 1, 1) * gen.uniform(-1, 1);
    const double s0 = gen.uniform(-2, 2), s1 = gen.uniform(-2, 2), th = gen.uniform(0, 1);
    const double lhs = hsigma_norm(f, (1 - th) * s0 + th * s1, ws);
    const double rhs = std::pow(hsigma_norm(f, s0, ws), 1 - th) * std::pow(hsigma_norm(f, s1, ws), th);
    shell = std::max(shell, rel_err(lhs, rhs));
  }
  return {worst >= -1e-10 && shell <= 1e-10,
          "min relative slack " + fmt(worst) + " (>= -1e-10) over 100 cases, single-shell mismatch " + fmt(shell) +
              " (<= 1e-10)"};
}

Verdict embedding() {
  std::string detail;
  bool ok = true;
  for (double sigma : {0.5, 1.0}) {
    std::vector<double> cs;
    for (int n : {16, 32, 64}) {
      const Grid3 g(n, 2.0);
      SpectralWorkspace ws(g);
      const Ball b({1.0, 1.0, 1.0}, 0.5);
      DualNormSolver solver(ws, {b, sigma});
      double c = 0.0;
      for (int i = 0; i < 8; ++i) {
        const auto f = FourierSeries::random(2000 + i, 2.0, 3).sample(g);
        c = std::max(c, solver.solve(f).value / lq_ball_norm(f, b, 6.0 / (3.0 + 2.0 * sigma)));
      }
      cs.push_back(c);
    }
    ok = ok && spread(cs) <= 2.0;
    detail += "sigma=" + fmt(sigma) + " C(16,32,64)=" + fmt(cs[0]) + "," + fmt(cs[1]) + "," + fmt(cs[2]) + "; ";
  }
  return {ok, detail + "max/min <= 2"};
}

Verdict beta_endpoints() {
  const std::vector<std::pair<double, double>> cases{
      {6.0 / 5.0, 2.0}, {2.0, 1.0}, {1.5, 4.0 / 3.0}, {18.0 / 13.0, 1.5}, {10.0 / 7.0, 10.0 / 7.0}};
  double worst = 0.0;
  for (const auto& [a, b] : cases) worst = std::max(worst, rel_err(beta_of_alpha(a), b));
  return {worst <= 4 * std::numeric_limits<double>::epsilon(), "max relative error " + fmt(worst) + " (<= 4 ulp)"};
}

Verdict oscillation() {
  const std::vector<int> res{32, 64, 128};
  const auto rows = oscillation_probe(2.4, 0.2, 1.0, res);
  std::string detail;
  for (const auto& r : rows)
    detail += "n=" + std::to_string(r.n) + " |f|:" + fmt(r.absolute_norm) + " f:" + fmt(r.signed_norm) + "; ";
  const bool increasing = rows[0].absolute_norm < rows[1].absolute_norm && rows[1].absolute_norm < rows[2].absolute_norm;
  const double growth = rows[2].signed_norm / rows[0].signed_norm;
  return {increasing && growth < 2.0,
          detail + (increasing ? "|f| increasing" : "|f| not increasing") + ", f growth " + fmt(growth) + " (< 2)"};
}

Verdict energy_residual() {
  const auto& s = taylor_green(64);
  SpectralWorkspace ws(s.grid());
  const double L = s.grid().box_len();
  const Point3 c{0.4 * L, 0.45 * L, 0.5 * L};
  double worst = 0.0;
  for (const auto& phi :
       {TestFunction::poly_bump(c, 1.0, L / 3, 0.4), TestFunction::backward_heat(c, 1.0, L / 3, 0.4, 0.8)}) {
    const auto r = energy_inequality_residual(s, phi, 1.0, ws, 0.1);
    worst = std::max(worst, std::abs(r.residual) / (std::abs(r.lhs) + std::abs(r.rhs) + 1e-300));
  }
  const Grid3 g(16, L);
  SpectralWorkspace wz(g);
  std::vector<Snapshot> zs;
  for (double t : {0.0, 0.5, 1.0}) zs.push_back({t, VectorField3(g), ScalarField3(g)});
  const auto z = energy_inequality_residual(SnapshotSeries(g, std::move(zs)),
                                            TestFunction::poly_bump(c, 1.0, L / 3, 0.4), 1.0, wz, 0.1);
  const bool zero = z.lhs == 0.0 && z.rhs == 0.0 && z.residual == 0.0;
  return {worst < 1e-2 && zero,
          "max relative residual " + fmt(worst) + " (< 1e-2), zero fields " + (zero ? "exact 0" : "nonzero")};
}

Verdict energy_bound() {
  const double L = 2 * M_PI;
  const std::vector<Point3> centers{{0.3 * L, 0.4 * L, 0.55 * L}, {0.7 * L, 0.2 * L, 0.35 * L}};
  bool violation = false;
  double worst_spread = 0.0;
  std::string detail;
  for (double sigma : {0.0, 0.5, 1.0}) {
    for (const auto& c : centers) {
      std::vector<double> cs;
      for (int n : {32, 64}) {
        const auto& s = taylor_green(n);
        SpectralWorkspace ws(s.grid());
        const auto rep = energy_bound_check(s, {c, 2.5, L / 4}, sigma, ws);
        violation = violation || rep.violation;
        cs.push_back(rep.empirical_C);
      }
      worst_spread = std::max(worst_spread, spread(cs));
    }
  }
  detail = std::string(violation ? "violation flagged" : "no violation flags") + ", worst C ratio n=64/n=32 " +
           fmt(worst_spread) + " (<= 2)";
  return {!violation && worst_spread <= 2.0, detail};
}

Verdict pressure_split() {
  const double L = 2 * M_PI;
  std::vector<double> residuals;
  double identity = 0.0;
  for (int n : {16, 32, 64}) {
    const Grid3 g(n, L);
    SpectralWorkspace ws(g);
    const auto u = taylor_green_init(g);
    const auto p = pressure_from_velocity(u, ws);
    const Ball b({0.5 * L + 0.3, 0.5 * L + 0.21, 0.5 * L + 0.09}, L / 8);
    const auto split = split_pressure(u, p, b, ws);
    for (std::size_t i : ball_indices(g, b))
      identity = std::max(identity, std::abs(split.p_tilde[i] + split.h[i] - p[i]) / p.max_abs());
    residuals.push_back(split.harmonic_residual);
  }
  const bool decreasing = residuals[1] < residuals[0] && residuals[2] < residuals[1];
  return {identity <= 1e-10 && decreasing,
          "split identity error " + fmt(identity) + " (<= 1e-10), harmonic residual n=16,32,64: " + fmt(residuals[0]) +
              ", " + fmt(residuals[1]) + ", " + fmt(residuals[2]) + (decreasing ? " decreasing" : " not decreasing")};
}

Verdict scaling() {
  const auto coarse = random_series(1011, Grid3(32, 2.0), {0.0, 0.1, 0.2, 0.3, 0.4}, 2);
  const auto fine = testing::rescale_by_two(coarse);
  SpectralWorkspace wc(coarse.grid()), wf(fine.grid());
  const ParabolicCylinder cyl{{1.0, 0.75, 1.25}, 0.4, 0.5};
  const auto fcyl = testing::rescale_cylinder(cyl);
  struct Row {
    std::string name;
    double a, b;
  };
  std::vector<Row> rows{
      {"A", quantity_A(coarse, cyl).value, quantity_A(fine, fcyl).value},
      {"B", quantity_B(coarse, cyl, wc).value, quantity_B(fine, fcyl, wf).value},
      {"C_sigma", quantity_C_sigma(coarse, cyl, 0.5, wc).value, quantity_C_sigma(fine, fcyl, 0.5, wf).value},
      {"C_ab", quantity_C_alphabeta(coarse, cyl, 1.5, 4.0 / 3).value, quantity_C_alphabeta(fine, fcyl, 1.5, 4.0 / 3).value},
      {"D_sigma", quantity_D_sigma(coarse, cyl, 0.5, wc).value, quantity_D_sigma(fine, fcyl, 0.5, wf).value},
      {"D_ab", quantity_D_alphabeta(coarse, cyl, 1.5, 4.0 / 3).value, quantity_D_alphabeta(fine, fcyl, 1.5, 4.0 / 3).value},
  };
  double worst = 0.0;
  std::string detail;
  for (const auto& r : rows) {
    const double e = rel_err(r.b, r.a);
    worst = std::max(worst, e);
    detail += r.name + " " + fmt(e) + "; ";
  }
  return {worst <= 0.02, detail + "max relative deviation " + fmt(worst) + " (<= 0.02)"};
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "nsreg_acceptance";
  fs::create_directories(dir);
  const std::string in = (dir / "tg.nsf").string();
  auto call = [](std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "nsreg");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    return code;
  };
  std::string out;
  if (call({"generate", "--n", "32", "--dt", "0.01", "--t-end", "0.5", "--output-every", "5", "--out", in}, out) != 0)
    return {false, "generate failed"};
  std::vector<std::string> hashes;
  for (int i = 0; i < 2; ++i) {
    if (call({"analyze", "--in", in, "--point", "3,3,3,0.5", "--point", "1,2,4,0.5", "--radius", "0.6", "--radius",
              "0.4", "--criteria", "all", "--seed", "42", "--out", (dir / "report.json").string()},
             out) != 0)
      return {false, "analyze failed"};
    const auto pos = out.find("determinism-hash ");
    if (pos == std::string::npos) return {false, "no hash printed"};
    hashes.push_back(out.substr(pos + 17, 64));
  }
  return {hashes[0] == hashes[1], "hashes " + hashes[0].substr(0, 16) + "... and " + hashes[1].substr(0, 16) + "..."};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 = no runtime bound
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "spectral-exactness", 10, spectral_exactness},
      {2, "dual-norm-oracle", 60, dual_norm_oracle},
      {3, "sigma-zero-degeneracy", 0, sigma_zero},
      {4, "sobolev-interpolation", 0, interpolation},
      {5, "embedding-constant", 0, embedding},
      {6, "beta-of-alpha", 0, beta_endpoints},
      {7, "oscillation-capture", 300, oscillation},
      {8, "energy-residual", 0, energy_residual},
      {9, "local-energy-bound", 0, energy_bound},
      {10, "pressure-split", 0, pressure_split},
      {11, "scaling-invariance", 0, scaling},
      {12, "determinism", 0, determinism},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      v.pass = false;
      v.detail += "; over the " + fmt(c.budget_s) + " s budget";
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.id << " " << c.name << ": " << v.detail << " [" << fmt(secs)
              << " s]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
