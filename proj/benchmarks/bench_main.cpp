#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "subrank/biclique.hpp"
#include "subrank/expand_rank1.hpp"
#include "subrank/matrix.hpp"
#include "subrank/pipeline.hpp"
#include "subrank/rng.hpp"
#include "subrank/rows_solver.hpp"
#include "subrank/seeding.hpp"
#include "subrank/synth.hpp"

namespace {

using namespace subrank;

// 120x100 host with a rank-1 block at the upper-left 35x30 corner, so the
// expansion benchmarks can anchor inside the block deterministically.
const DenseMatrix& corner_host() {
  static const DenseMatrix host = [] {
    RngStream rng(11);
    DenseMatrix d(120, 100);
    for (std::size_t i = 0; i < 120; ++i)
      for (std::size_t j = 0; j < 100; ++j) d(i, j) = rng.normal();
    std::vector<double> x(35), y(30);
    for (auto& v : x) v = rng.normal();
    for (auto& v : y) v = rng.normal();
    for (std::size_t i = 0; i < 35; ++i)
      for (std::size_t j = 0; j < 30; ++j)
        d(i, j) = x[i] * y[j] + 1e-5 * rng.normal();
    return d;
  }();
  return host;
}

const DenseMatrix& noisy_planted_host() {
  static const DenseMatrix host = [] {
    PlantSpec spec;
    spec.n = 100;
    spec.m = 80;
    spec.n_p = 28;
    spec.m_p = 24;
    spec.eps_noise = 1e-5;
    RngStream rng(5);
    return plant_single(spec, rng).first;
  }();
  return host;
}

// 40x32 indicator with a planted 14x12 all-ones block plus sparse noise,
// small enough for the exact branch-and-bound.
const IndicatorMatrix& bench_indicator() {
  static const IndicatorMatrix ind = [] {
    RngStream rng(7);
    IndicatorMatrix m(40, 32);
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 0; j < 32; ++j)
        if (rng.uniform01() < 0.03) m.set(i, j);
    for (std::size_t i = 10; i < 24; ++i)
      for (std::size_t j = 8; j < 20; ++j) m.set(i, j);
    return m;
  }();
  return ind;
}

void BM_SeedSampling(benchmark::State& state) {
  const DenseMatrix& host = noisy_planted_host();
  std::uint64_t salt = 0;
  for (auto _ : state) {
    RngStream rng(RngStream::derive(123, salt++));
    benchmark::DoNotOptimize(sample_seed(host, 1, SeedPolicy{}, rng));
  }
}
BENCHMARK(BM_SeedSampling);

void BM_RatioExpansion(benchmark::State& state) {
  const DenseMatrix& host = corner_host();
  const Anchor anchor{0, 0};
  for (auto _ : state) {
    const RatioMatrices ratios = ratio_matrices(host, anchor);
    const IndicatorMatrix rows =
        row_indicator(ratios.row_ratios, anchor.col_index, 0.05);
    const IndicatorMatrix cols =
        col_indicator(ratios.col_ratios, anchor.row_index, 0.05);
    benchmark::DoNotOptimize(intersect(rows, cols));
  }
}
BENCHMARK(BM_RatioExpansion);

void BM_BicliqueExact(benchmark::State& state) {
  const IndicatorMatrix& ind = bench_indicator();
  for (auto _ : state)
    benchmark::DoNotOptimize(solve(ind, BicliqueStrategy{}));
}
BENCHMARK(BM_BicliqueExact);

void BM_BicliqueGreedy(benchmark::State& state) {
  const IndicatorMatrix& ind = bench_indicator();
  BicliqueStrategy strategy;
  strategy.kind = BicliqueKind::kGreedyPeel;
  for (auto _ : state) benchmark::DoNotOptimize(solve(ind, strategy));
}
BENCHMARK(BM_BicliqueGreedy);

void BM_BicliqueSpectral(benchmark::State& state) {
  const IndicatorMatrix& ind = bench_indicator();
  BicliqueStrategy strategy;
  strategy.kind = BicliqueKind::kSpectral;
  for (auto _ : state) benchmark::DoNotOptimize(solve(ind, strategy));
}
BENCHMARK(BM_BicliqueSpectral);

void BM_SingularValues(benchmark::State& state) {
  RngStream rng(3);
  DenseMatrix d(60, 40);
  for (std::size_t i = 0; i < 60; ++i)
    for (std::size_t j = 0; j < 40; ++j) d(i, j) = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(d));
}
BENCHMARK(BM_SingularValues);

void BM_SpectralNorm(benchmark::State& state) {
  RngStream rng(4);
  DenseMatrix d(60, 40);
  for (std::size_t i = 0; i < 60; ++i)
    for (std::size_t j = 0; j < 40; ++j) d(i, j) = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(d));
}
BENCHMARK(BM_SpectralNorm);

void BM_RowSubset(benchmark::State& state) {
  RngStream rng(9);
  DenseMatrix d(40, 8);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 8; ++j) d(i, j) = rng.normal();
  for (auto _ : state)
    benchmark::DoNotOptimize(largest_row_subset(d, 0.3));
}
BENCHMARK(BM_RowSubset);

void BM_Discover(benchmark::State& state) {
  const DenseMatrix& host = noisy_planted_host();
  DiscoveryConfig cfg;
  cfg.n_init = 6;
  cfg.master_seed = 17;
  for (auto _ : state) benchmark::DoNotOptimize(discover(host, cfg));
}
BENCHMARK(BM_Discover);

}  // namespace

BENCHMARK_MAIN();
