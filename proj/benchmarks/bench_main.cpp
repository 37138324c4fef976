#include <benchmark/benchmark.h>

#include "infostab/certifiers.hpp"
#include "infostab/domains.hpp"
#include "infostab/equations.hpp"
#include "infostab/measures.hpp"
#include "infostab/models.hpp"

using namespace infostab;

static void BM_SimplexEnumeration(benchmark::State& state) {
  const SimplexGrid grid(4, static_cast<int>(state.range(0)), Variant::Open);
  for (auto _ : state) {
    double total = 0.0;
    grid.for_each(0, grid.size(), [&](std::uint64_t, std::span<const double> p) { total += p[0]; });
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_SimplexEnumeration)->Arg(20)->Arg(60);

static void BM_FundamentalResidual(benchmark::State& state) {
  const auto f = scalar::sum({alpha_entropy_generator(2.0), scalar::scaled_bump(0.37, 0.1, 1e-3)});
  const TriangleGrid grid(static_cast<int>(state.range(0)), Variant::Open);
  const EngineOptions options{.jobs = static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(residual(equation::FundamentalParametric{2.0}, {.f = f}, grid, options));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_FundamentalResidual)->Args({256, 1})->Args({256, 4})->Args({1024, 1});

static void BM_MeasureEvaluation(benchmark::State& state) {
  const InformationMeasure measure(0.5, alpha_entropy_generator(0.5), 6, {{3, 1e-3, 1}});
  const std::vector<double> p{0.1, 0.2, 0.15, 0.25, 0.2, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(measure(p));
}
BENCHMARK(BM_MeasureEvaluation);

static void BM_CertifyFundamentalOpen(benchmark::State& state) {
  const auto f = scalar::sum({scalar::power_family(1.0, 0.5, 2.0), scalar::noise(1e-4, 3)});
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify_fundamental_open(f, Alpha(2.0), r));
}
BENCHMARK(BM_CertifyFundamentalOpen)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
