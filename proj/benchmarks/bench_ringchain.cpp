#include <benchmark/benchmark.h>

#include <cmath>

#include "ringchain/band_structure.hpp"
#include "ringchain/floquet_oracle.hpp"
#include "ringchain/probability.hpp"

using namespace ringchain;

static void BM_CoefficientsLoose(benchmark::State& st) {
    const auto s = ChainSpec::loose(1, 2.1, 1.3, 0.2);
    double k = 0.5;
    for (auto _ : st) {
        benchmark::DoNotOptimize(coefficients(s, SpectralPoint::positive(k)));
        k += 1e-6;
    }
}
BENCHMARK(BM_CoefficientsLoose);

static void BM_CellDeterminant(benchmark::State& st) {
    const auto s = ChainSpec::loose(1, 2.1, 1.3, 0.2);
    for (auto _ : st) benchmark::DoNotOptimize(determinant(build_cell_system(s, 1.7, 0.4)));
}
BENCHMARK(BM_CellDeterminant);

static void BM_OracleRoots(benchmark::State& st) {
    const auto s = ChainSpec::loose(1, 2.1, 1.3, 0.2);
    for (auto _ : st) benchmark::DoNotOptimize(oracle_theta_roots(s, 1.7));
}
BENCHMARK(BM_OracleRoots);

static void BM_ScanBands(benchmark::State& st) {
    const auto s = ChainSpec::loose(1, 2 * kPi / 3, 2, 0.5);
    const double kmax = static_cast<double>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(scan_bands(s, kmax));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(default_grid_points(kmax)));
}
BENCHMARK(BM_ScanBands)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_NegativeBandsMerged(benchmark::State& st) {
    const auto s = ChainSpec::merged(1, 20, 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(find_negative_bands(s, 3, 0, 1e-13));
}
BENCHMARK(BM_NegativeBandsMerged)->Unit(benchmark::kMillisecond);

static void BM_TorusTight(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(torus_probability(Variant::Tight, 0.25, n, 0));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_TorusTight)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_PeriodicTight(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(periodic_probability(Variant::Tight, 0.25, make_rational(3363, 2378)));
}
BENCHMARK(BM_PeriodicTight)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
