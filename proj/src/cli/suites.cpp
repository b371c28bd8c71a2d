#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nsreg/cli.hpp"
#include "nsreg/criteria.hpp"
#include "nsreg/error.hpp"
#include "nsreg/reference.hpp"
#include "nsreg/solver.hpp"
#include "nsreg/synth.hpp"

namespace nsreg::cli {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
 public:
  Recorder(std::string suite, std::uint64_t seed, int n, std::ostream& out)
      : suite_(std::move(suite)), seed_(seed), n_(n), out_(out) {}

  void add(const std::string& name, bool passed, const std::string& detail) {
    std::string d = detail;
    if (!passed) d += " [reproduce: --suite " + suite_ + " --seed " + std::to_string(seed_) + " --n " + std::to_string(n_) + "]";
    out_ << (passed ? "PASS " : "FAIL ") << suite_ << '/' << name << ": " << d << '\n';
    results_.push_back({suite_, name, passed, d});
  }

  std::vector<PropertyResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::uint64_t seed_;
  int n_;
  std::ostream& out_;
  std::vector<PropertyResult> results_;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void norms_suite(Recorder& rec, std::uint64_t seed, int n) {
  const int nd = std::min(n, 16);
  const double L = 2.0;
  const Grid3 gd(nd, L);
  SpectralWorkspace wsd(gd);
  const Ball ball({1.0, 1.0, 1.0}, 0.55);
  const int kmax = std::max(1, nd / 2 - 1);

  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const ScalarField3 f = FourierSeries::random(seed * 101 + i, L, std::min(kmax, 3)).sample(gd);
    for (double s : {0.25, 0.5, 1.0}) {
      const double cg = dual_norm(f, {ball, s}, wsd).value;
      const double dense = reference::dense_dual_norm(f, ball, s);
      worst = std::max(worst, std::abs(cg - dense) / dense);
    }
  }
  rec.add("dense-oracle", worst <= 1e-8, "n=" + std::to_string(nd) + " max relative error " + num(worst));

  bool exact = true;
  for (int i = 0; i < 10; ++i) {
    const ScalarField3 f = FourierSeries::random(seed * 103 + i, L, std::min(kmax, 3)).sample(gd);
    exact = exact && dual_norm(f, {ball, 0.0}, wsd).value == lq_ball_norm(f, ball, 2.0);
  }
  rec.add("sigma-zero", exact, exact ? "dual norm equals L2 ball norm bitwise" : "mismatch");

  const Grid3 g(n, L);
  SpectralWorkspace ws(g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> us(-2.0, 2.0), ut(0.05, 0.95);
  double min_slack = kInfinity;
  for (int i = 0; i < 20; ++i) {
    const ScalarField3 f = FourierSeries::random(seed * 107 + i, L, std::max(1, std::min(n / 2 - 1, 4))).sample(g);
    double s0 = us(rng), s1 = us(rng);
    const double th = ut(rng);
    const double s = (1.0 - th) * s0 + th * s1;
    const double lhs = hsigma_norm(f, s, ws);
    const double rhs = std::pow(hsigma_norm(f, s0, ws), 1.0 - th) * std::pow(hsigma_norm(f, s1, ws), th);
    min_slack = std::min(min_slack, (rhs - lhs) / rhs);
  }
  rec.add("sobolev-interpolation", min_slack >= -1e-10, "min relative slack " + num(min_slack));

  double max_ratio = 0.0;
  double max_embed = 0.0;
  const Ball gball({1.0, 1.0, 1.0}, 0.6);
  for (int i = 0; i < 10; ++i) {
    const ScalarField3 f = FourierSeries::random(seed * 109 + i, L, std::max(1, std::min(n / 2 - 1, 3))).sample(g);
    max_ratio = std::max(max_ratio, mean_zero_interpolation_check(f, gball, 6.0, ws).ratio);
    const double dn = dual_norm(f, {gball, 0.5}, ws).value;
    max_embed = std::max(max_embed, dn / lq_ball_norm(f, gball, 6.0 / 4.0));
  }
  rec.add("mean-zero-interpolation", std::isfinite(max_ratio), "q=6 max ratio " + num(max_ratio));
  rec.add("embedding", std::isfinite(max_embed) && max_embed > 0.0, "sigma=0.5 empirical C " + num(max_embed));
}

void pressure_suite(Recorder& rec, std::uint64_t seed, int n) {
  const double L = 2.0 * kPi;
  const Grid3 g(n, L);
  SpectralWorkspace ws(g);
  const VectorField3 u = taylor_green_init(g);
  const ScalarField3 p = pressure_from_velocity(u, ws);
  const Ball ball({L / 2 + 0.1, L / 2 - 0.2, L / 2 + 0.05}, L / 8);
  const PressureSplit split = split_pressure(u, p, ball, ws);
  double err = 0.0;
  for (std::size_t i : ball_indices(g, ball)) err = std::max(err, std::abs(split.p_tilde[i] + split.h[i] - p[i]));
  err /= p.max_abs() + 1e-300;
  rec.add("split-identity", err <= 1e-10, "max relative error " + num(err));

  VectorField3 v = u;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto inside = ball_indices(g, ball);
  std::vector<char> in(g.size(), 0);
  for (std::size_t i : inside) in[i] = 1;
  for (int a = 0; a < 3; ++a)
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!in[i]) v[a][i] += gauss(rng);
  const PressureSplit split2 = split_pressure(v, p, ball, ws);
  double diff = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) diff = std::max(diff, std::abs(split2.p_tilde[i] - split.p_tilde[i]));
  rec.add("p-tilde-locality", diff <= 1e-12, "max change " + num(diff));

  const InequalitySides hc = harmonic_dual_bound_check(ScalarField3::constant(g, 1.0), Ball({L / 2, L / 2, L / 2}, L / 4 - 1e-9), 0.0, ws);
  const double expect = std::pow(2.0, -1.5);
  rec.add("harmonic-constant", std::abs(hc.ratio - expect) <= 0.05 * expect,
          "ratio " + num(hc.ratio) + " vs " + num(expect));

  SolverConfig cfg{n, L, 0.1, 0.01, 0.8, 4, true, true};
  const SnapshotSeries series = run(cfg);
  bool ok = true;
  std::string detail;
  for (PressureBound variant : {PressureBound::p, PressureBound::pbar, PressureBound::DDtiti}) {
    const BoundReport b = pressure_bound_check(series, {{L / 2, L / 2, L / 2}, 0.8, L / 16}, L / 8, variant, 0.5, ws);
    ok = ok && std::isfinite(b.empirical_C) && !b.violation;
    detail += to_string(variant) + " C=" + num(b.empirical_C) + " ";
  }
  rec.add("pressure-bounds", ok, detail);
}

void energy_suite(Recorder& rec, std::uint64_t seed, int n) {
  const double L = 2.0 * kPi;
  const int ns = std::max(n, 16);
  SolverConfig cfg{ns, L, 0.1, 0.01, 1.0, 2, true, true};
  const SnapshotSeries series = run(cfg);
  const Grid3 g = series.grid();
  SpectralWorkspace ws(g);
  const Point3 c{L / 2 + 0.3, L / 2 - 0.1, L / 2};
  for (const auto& [name, phi] : {std::pair{"poly-bump", TestFunction::poly_bump(c, 1.0, L / 3, 0.4)},
                                  std::pair{"backward-heat", TestFunction::backward_heat(c, 1.0, L / 3, 0.4, 0.8)}}) {
    const EnergyResidual e = energy_inequality_residual(series, phi, 1.0, ws, cfg.viscosity);
    const double rel = std::abs(e.residual) / (std::abs(e.lhs) + std::abs(e.rhs) + 1e-300);
    rec.add(std::string("energy-residual-") + name, rel < 1e-2, "relative residual " + num(rel));
  }
  bool ok = true;
  std::string detail;
  for (double s : {0.0, 0.5, 1.0}) {
    const BoundReport b = energy_bound_check(series, {c, 1.0, L / 8}, s, ws);
    ok = ok && !b.violation && std::isfinite(b.empirical_C);
    detail += "sigma=" + num(s) + " C=" + num(b.empirical_C) + " ";
  }
  rec.add("local-energy-bound", ok, detail);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, L);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Point3 z{pos(rng), pos(rng), pos(rng)};
    const BoundReport b = cubic_bound_check(series, {z, 1.0, L / 16}, L / 8, ws);
    worst = std::max(worst, b.empirical_C);
  }
  rec.add("cubic-bound", worst <= 10.0, "max empirical C " + num(worst));
}

void oscillation_suite(Recorder& rec, int n) {
  const std::vector<int> res{2 * n, 4 * n, 8 * n};
  const auto rows = oscillation_probe(2.4, 0.2, 1.0, res);
  bool increasing = true;
  std::string table;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table += "n=" + std::to_string(rows[i].n) + " f=" + num(rows[i].signed_norm) + " |f|=" + num(rows[i].absolute_norm) + "; ";
    if (i > 0) increasing = increasing && rows[i].absolute_norm > rows[i - 1].absolute_norm;
  }
  rec.add("abs-growth", increasing, table);
  const double ratio = rows.back().signed_norm / rows.front().signed_norm;
  rec.add("signed-bounded", ratio < 2.0, "growth " + num(ratio));
}

}  // namespace

std::vector<PropertyResult> run_suite(const std::string& suite, std::uint64_t seed, int n, std::ostream& out) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw ValidationError("unknown suite '" + suite + "'");
  std::vector<PropertyResult> all;
  auto one = [&](const std::string& name, auto&& body) {
    if (suite != "all" && suite != name) return;
    Recorder rec(name, seed, n, out);
    try {
      body(rec);
    } catch (const Error& e) {
      rec.add("run", false, std::string("error: ") + e.what());
    }
    auto r = rec.take();
    all.insert(all.end(), r.begin(), r.end());
  };
  one("norms", [&](Recorder& r) { norms_suite(r, seed, n); });
  one("pressure", [&](Recorder& r) { pressure_suite(r, seed, n); });
  one("energy", [&](Recorder& r) { energy_suite(r, seed, n); });
  one("oscillation", [&](Recorder& r) { oscillation_suite(r, n); });
  return all;
}

}  // namespace nsreg::cli
