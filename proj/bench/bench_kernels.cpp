#include <benchmark/benchmark.h>

#include "minf/sieve.hpp"
#include "minf/walk.hpp"

namespace {

void BM_ScanReference(benchmark::State& state) {
  minf::ScanOptions o;
  o.kind = minf::ArithKind::MuInf;
  o.x_max = static_cast<std::uint64_t>(state.range(0));
  o.checkpoint_every = o.x_max;
  for (auto _ : state) benchmark::DoNotOptimize(minf::reference::scan(o).msum);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScanParallel(benchmark::State& state) {
  minf::ScanOptions o;
  o.kind = minf::ArithKind::MuInf;
  o.x_max = static_cast<std::uint64_t>(state.range(0));
  o.checkpoint_every = o.x_max;
  o.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(minf::scan(o).msum);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClassicalSegment(benchmark::State& state) {
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(minf::sieve_values(minf::ArithKind::Mu, 1, hi, 1).data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Walk(benchmark::State& state) {
  const double cs[] = {1.0, 2.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(minf::simulate(10000, static_cast<std::uint64_t>(state.range(0)), 1, cs,
                                            static_cast<int>(state.range(1))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScanReference)->Arg(1 << 22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Args({1 << 22, 1})->Args({1 << 22, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalSegment)->Arg(1 << 22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Walk)->Args({10000, 1})->Args({10000, 0})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
