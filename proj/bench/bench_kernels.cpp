// Serial reference kernels against their OpenMP versions, plus one end-to-end dual-norm solve.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "nsreg/kernels.hpp"
#include "nsreg/norms.hpp"
#include "nsreg/synth.hpp"

namespace {

using namespace nsreg;
namespace ks = kernels::serial;
namespace kp = kernels::parallel;

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (double& x : v) x = nd(rng);
  return v;
}

std::vector<std::size_t> ball_of(int n) {
  const Grid3 g(n, 1.0);
  return ball_indices(g, Ball({0.5, 0.5, 0.5}, 0.25));
}

template <double (*Dot)(std::span<const double>, std::span<const double>)>
void BM_dot(benchmark::State& st) {
  const auto a = random_vector(st.range(0), 1), b = random_vector(st.range(0), 2);
  for (auto _ : st) benchmark::DoNotOptimize(Dot(a, b));
  st.SetBytesProcessed(st.iterations() * st.range(0) * 16);
}

template <double (*Pow)(std::span<const double>, std::span<const std::size_t>, double)>
void BM_gather_pow_sum(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto v = random_vector(static_cast<std::size_t>(n) * n * n, 3);
  const auto idx = ball_of(n);
  for (auto _ : st) benchmark::DoNotOptimize(Pow(v, idx, 1.5));
  st.SetItemsProcessed(st.iterations() * idx.size());
}

template <void (*Scale)(std::span<std::complex<double>>, std::span<const double>)>
void BM_scale_spectrum(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const std::size_t m = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  const auto mult = random_vector(m, 4);
  std::vector<std::complex<double>> spec(m, {1.0, 0.5});
  for (auto _ : st) {
    Scale(spec, mult);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * m);
}

void BM_dual_norm_solve(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Grid3 g(n, 2.0);
  SpectralWorkspace ws(g);
  const auto f = FourierSeries::random(5, 2.0, 3).sample(g);
  DualNormSolver solver(ws, {Ball({1, 1, 1}, 0.5), 0.5});
  int iters = 0;
  for (auto _ : st) iters = solver.solve(f).iterations;
  st.counters["cg_iterations"] = iters;
}

}  // namespace

BENCHMARK(BM_dot<ks::dot>)->Name("dot/serial")->Arg(1 << 15)->Arg(1 << 21);
BENCHMARK(BM_dot<kp::dot>)->Name("dot/parallel")->Arg(1 << 15)->Arg(1 << 21);
BENCHMARK(BM_gather_pow_sum<ks::gather_pow_sum>)->Name("gather_pow_sum/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_gather_pow_sum<kp::gather_pow_sum>)->Name("gather_pow_sum/parallel")->Arg(32)->Arg(64);
BENCHMARK(BM_scale_spectrum<ks::scale_spectrum>)->Name("scale_spectrum/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_scale_spectrum<kp::scale_spectrum>)->Name("scale_spectrum/parallel")->Arg(32)->Arg(64);
BENCHMARK(BM_dual_norm_solve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
