#include <benchmark/benchmark.h>

#include "check/check.hpp"

using namespace snc;

namespace {

void BM_CasesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check::run_cases_serial(17, static_cast<std::size_t>(state.range(0))));
}

void BM_CasesParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check::run_cases_parallel(17, static_cast<std::size_t>(state.range(0))));
}

LineBundleModel scan_instance(std::size_t extra) {
  check::Rng rng(23);
  SncConfiguration cfg = check::random_configuration(rng, {8, 8, extra, true});
  return check::random_coboundary(rng, cfg);
}

void BM_ScanSerial(benchmark::State& state) {
  LineBundleModel b = scan_instance(static_cast<std::size_t>(state.range(0)));
  const std::size_t len = 2 * b.graph().geometric_edge_count();
  for (auto _ : state) benchmark::DoNotOptimize(check::scan_reduced_circuits_serial(b, 0, len));
}

void BM_ScanParallel(benchmark::State& state) {
  LineBundleModel b = scan_instance(static_cast<std::size_t>(state.range(0)));
  const std::size_t len = 2 * b.graph().geometric_edge_count();
  for (auto _ : state) benchmark::DoNotOptimize(check::scan_reduced_circuits_parallel(b, 0, len));
}

}  // namespace

BENCHMARK(BM_CasesSerial)->Arg(70)->Arg(280)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CasesParallel)->Arg(70)->Arg(280)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
