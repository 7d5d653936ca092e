#include <benchmark/benchmark.h>

#include "qsym/census.hpp"

namespace {

const std::vector<qsym::CensusSlice> kOrdering = qsym::default_census();
const std::vector<qsym::CensusSlice> kSaturation{{2, 2}, {3, 1}};

void BM_OrderingSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qsym::ordering_census_serial(kOrdering));
}

void BM_OrderingParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qsym::ordering_census_parallel(kOrdering));
}

void BM_SaturationSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qsym::saturation_census_serial(kSaturation));
}

void BM_SaturationParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qsym::saturation_census_parallel(kSaturation));
}

}  // namespace

BENCHMARK(BM_OrderingSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrderingParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SaturationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SaturationParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
