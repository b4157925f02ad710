#include <benchmark/benchmark.h>

#include <random>

#include "periodica/periodica.hpp"

using namespace periodica;

namespace {

Signal noisy_periods(std::int64_t periods, std::int64_t per_period, double sigma) {
  const auto clean = sample_phase_aligned(builtin_template("f2"), random_reparam(periods, 1), per_period);
  const auto w = sample_iid_gaussian(clean.size(), sigma, 2);
  std::vector<double> v(clean.values().begin(), clean.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
  return Signal(std::vector<double>(clean.times().begin(), clean.times().end()), std::move(v));
}

void BM_DiagramInterval(benchmark::State& state) {
  const auto s = noisy_periods(state.range(0) / 64, 64, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(diagram_interval(s));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_DiagramInterval)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_Bottleneck(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<PlanePoint> a, b;
  for (int i = 0; i < state.range(0); ++i) {
    const double x = u(rng), y = u(rng);
    a.push_back({x, x + u(rng)});
    b.push_back({y, y + u(rng)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck(a, b));
}
BENCHMARK(BM_Bottleneck)->Arg(25)->Arg(100)->Arg(400);

void BM_ScanH(benchmark::State& state) {
  const auto d = diagram_interval(noisy_periods(state.range(0), 32, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(scan_h(d));
  state.counters["points"] = static_cast<double>(d.size());
}
BENCHMARK(BM_ScanH)->Arg(10)->Arg(50);

void BM_GPFactor(benchmark::State& state) {
  std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  for (auto _ : state) benchmark::DoNotOptimize(GaussianProcessSampler(grid, 0.05));
}
BENCHMARK(BM_GPFactor)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GPDraw(benchmark::State& state) {
  std::vector<double> grid(2000);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) / 1999.0;
  const GaussianProcessSampler sampler(grid, 0.05);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(0.3, ++seed));
}
BENCHMARK(BM_GPDraw)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
