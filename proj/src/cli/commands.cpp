#include <omp.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "nsreg/cli.hpp"
#include "nsreg/error.hpp"
#include "nsreg/report.hpp"
#include "nsreg/solver.hpp"

namespace nsreg::cli {

namespace {

using nlohmann::json;

// Usage errors detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::array<double, 4> parse_point(const std::string& s) {
  std::array<double, 4> v{};
  std::stringstream ss(s);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 4) throw UsageError("--point expects x,y,z,t: '" + s + "'");
    std::size_t used = 0;
    try {
      v[i] = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--point has a non-numeric entry: '" + s + "'");
    }
    if (used != item.size() || !std::isfinite(v[i])) throw UsageError("--point has a bad entry: '" + s + "'");
    ++i;
  }
  if (i != 4) throw UsageError("--point expects x,y,z,t: '" + s + "'");
  return v;
}

std::vector<CriterionTag> parse_criteria(const std::string& list) {
  if (list == "all") return all_criteria();
  std::vector<CriterionTag> tags;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      tags.push_back(criterion_from_string(item));
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
  }
  if (tags.empty()) throw UsageError("--criteria is empty");
  return tags;
}

std::string error_label(const std::exception& e) {
  if (dynamic_cast<const WindowError*>(&e)) return std::string("window: ") + e.what();
  if (dynamic_cast<const ConvergenceError*>(&e)) return std::string("convergence: ") + e.what();
  if (dynamic_cast<const ValidationError*>(&e)) return std::string("validation: ") + e.what();
  return std::string("error: ") + e.what();
}

struct GenerateArgs {
  std::string ic = "taylor-green";
  SolverConfig cfg;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  try {
    a.cfg.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  const SnapshotSeries series = run(a.cfg);
  save_series(series, a.out);
  out << "snapshots " << series.size() << ", final time " << series.last_time() << ", final energy "
      << std::setprecision(12) << mean_kinetic_energy(series[series.size() - 1].velocity) << '\n';
  return 0;
}

struct AnalyzeArgs {
  std::string in;
  std::vector<std::string> points;
  std::vector<double> radii;
  std::optional<double> sigma;
  std::optional<double> alpha;
  std::string criteria = "all";
  double epsilon = kDefaultThreshold;
  std::string out;
  std::string csv;
  int jobs = 1;
  std::uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  std::vector<std::array<double, 4>> points;
  for (const auto& p : a.points) points.push_back(parse_point(p));
  const std::vector<CriterionTag> tags = parse_criteria(a.criteria);
  if (!std::isfinite(a.epsilon)) throw UsageError("--epsilon must be finite");

  const SnapshotSeries series = load_series(a.in);
  const Grid3 grid = series.grid();

  std::vector<CriterionKind> kinds;
  for (CriterionTag t : tags) {
    CriterionKind k;
    k.tag = t;
    if (a.sigma) k.sigma = *a.sigma;
    if (a.alpha) k.alpha = *a.alpha;
    kinds.push_back(k);
  }

  struct Task {
    std::size_t point;
    double r;
    std::size_t kind;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < points.size(); ++p)
    for (double r : a.radii)
      for (std::size_t k = 0; k < kinds.size(); ++k) tasks.push_back({p, r, k});

  std::vector<ReportRow> rows(tasks.size());
  std::string fatal;
  const int jobs = std::max(1, a.jobs);
#pragma omp parallel num_threads(jobs)
  {
    SpectralWorkspace ws(grid, jobs > 1 ? 1 : 0);
#pragma omp for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(tasks.size()); ++i) {
      const Task& t = tasks[i];
      const auto& pt = points[t.point];
      const ParabolicCylinder cyl{{pt[0], pt[1], pt[2]}, pt[3], t.r};
      const CriterionKind& kind = kinds[t.kind];
      try {
        rows[i] = row_from_report(t.point, evaluate_criterion(series, kind, cyl, a.epsilon, ws));
      } catch (const Error& e) {
        ReportRow row;
        row.point_index = t.point;
        row.point = cyl.center;
        row.t0 = cyl.time;
        row.r = cyl.radius;
        row.criterion = to_string(kind.tag);
        try {
          row.param = kind.param_string();
        } catch (const Error&) {
        }
        row.threshold = a.epsilon;
        row.error = error_label(e);
        rows[i] = std::move(row);
      } catch (const std::exception& e) {
#pragma omp critical
        fatal = e.what();
      }
    }
  }
  if (!fatal.empty()) throw Error(fatal);

  ReportDocument doc;
  json params{{"points", a.points},
              {"radii", a.radii},
              {"criteria", a.criteria},
              {"epsilon", a.epsilon},
              {"seed", a.seed}};
  params["sigma"] = a.sigma ? json(*a.sigma) : json(nullptr);
  params["alpha"] = a.alpha ? json(*a.alpha) : json(nullptr);
  params["beta"] = nullptr;
  if (a.alpha) {
    try {
      params["beta"] = beta_of_alpha(*a.alpha);
    } catch (const ValidationError&) {
    }
  }
  doc.inputs = {{"file", std::filesystem::path(a.in).filename().string()},
                {"sha256", file_sha256(a.in)},
                {"grid", {{"n", grid.n()}, {"box_len", grid.box_len()}}},
                {"snapshots", series.size()},
                {"parameters", params}};
  doc.rows = std::move(rows);
  doc.provenance = {{"tool", "nsreg"}, {"timestamp", utc_timestamp()}, {"jobs", jobs}};

  {
    std::ofstream f(a.out);
    if (!f) throw IoError("cannot write '" + a.out + "'");
    f << to_json(doc).dump(2) << '\n';
  }
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw IoError("cannot write '" + a.csv + "'");
    write_csv(doc, f);
  }

  std::size_t sat = 0, unsat = 0, err = 0;
  for (const auto& r : doc.rows) {
    if (!r.satisfied) ++err;
    else if (*r.satisfied) ++sat;
    else ++unsat;
  }
  out << "rows " << doc.rows.size() << " (satisfied " << sat << ", unsatisfied " << unsat << ", errors " << err
      << ")\n";
  out << "determinism-hash " << determinism_hash(doc) << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local regularity diagnostics for periodic Navier-Stokes snapshot data", "nsreg"};
  app.require_subcommand(1);

  GenerateArgs gen;
  gen.cfg.box_len = 2.0 * std::numbers::pi;
  auto* g = app.add_subcommand("generate", "Run the pseudo-spectral solver and write an NSF1 file");
  g->add_option("--ic", gen.ic, "Initial condition")->check(CLI::IsMember({"taylor-green"}));
  g->add_option("--n", gen.cfg.n, "Grid points per side")->check(CLI::Range(4, 1024));
  g->add_option("--box-len", gen.cfg.box_len, "Periodic box length");
  g->add_option("--nu", gen.cfg.viscosity, "Viscosity");
  g->add_option("--dt", gen.cfg.dt, "Time step");
  g->add_option("--t-end", gen.cfg.t_end, "Final time");
  g->add_option("--output-every", gen.cfg.output_every, "Store every k-th step");
  g->add_option("--out", gen.out, "Output path")->required();

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "Evaluate regularity criteria on parabolic cylinders");
  a->add_option("--in", an.in, "Input NSF1 file")->required();
  a->add_option("--point", an.points, "Cylinder top x,y,z,t (repeatable)")->required()->allow_extra_args(false);
  a->add_option("--radius", an.radii, "Cylinder radius (repeatable)")->required()->allow_extra_args(false);
  auto* sig = a->add_option("--sigma", an.sigma, "Dual-norm order for sigma criteria");
  auto* alp = a->add_option("--alpha", an.alpha, "Integrability alpha; beta is derived");
  sig->excludes(alp);
  a->add_option("--criteria", an.criteria, "Comma-separated criteria or 'all'");
  a->add_option("--epsilon", an.epsilon, "Threshold");
  a->add_option("--out", an.out, "JSON report path")->required();
  a->add_option("--csv", an.csv, "CSV report path");
  a->add_option("--jobs", an.jobs, "Parallel row evaluations")->check(CLI::PositiveNumber);
  a->add_option("--seed", an.seed, "Seed echoed into the report");

  std::string suite;
  std::uint64_t seed = 0;
  int n = 16;
  auto* c = app.add_subcommand("check", "Run invariant suites");
  c->add_option("--suite", suite, "norms, pressure, energy, oscillation or all")->required();
  c->add_option("--seed", seed, "Random seed");
  c->add_option("--n", n, "Base grid size")->check(CLI::Range(8, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "nsreg: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*g) return cmd_generate(gen, out);
    if (*a) return cmd_analyze(an, out);
    if (*c) {
      if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw UsageError("unknown suite '" + suite + "'");
      const auto results = run_suite(suite, seed, n, out);
      bool ok = true;
      for (const auto& r : results) ok = ok && r.passed;
      out << (ok ? "all properties passed" : "some properties failed") << '\n';
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "nsreg: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "nsreg: " << error_label(e) << '\n';
    return 1;
  }
  return 2;
}

}  // namespace nsreg::cli
