#include <benchmark/benchmark.h>

#include <sparsebeam/agile.hpp>
#include <sparsebeam/baselines.hpp>
#include <sparsebeam/recover.hpp>

using namespace sparsebeam;

namespace {

ChannelInstance two_paths(std::size_t n) {
  const GridPath p[] = {{n / 5, n / 3, 1.0}, {n / 2, n / 7, cplx(0.0, 0.6)}};
  return make_grid_channel(n, p, 30.0, 1);
}

void BM_BuildHash(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  FourierContext ctx(n);
  const auto g = HashGeometry::for_sparsity(n, 16);
  Engine rng = make_engine(1);
  for (auto _ : state) benchmark::DoNotOptimize(build_hash(ctx, g, rng));
}
BENCHMARK(BM_BuildHash)->Arg(64)->Arg(256)->Arg(1024);

void BM_MeasureTwoSided(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  FourierContext ctx(n);
  Engine rng = make_engine(2);
  const auto g = HashGeometry::for_sparsity(n, 4);
  const auto rx = build_hash(ctx, g, rng), tx = build_hash(ctx, g, rng);
  const auto ch = two_paths(n);
  for (auto _ : state) benchmark::DoNotOptimize(measure_two_sided(rx, tx, ch));
}
BENCHMARK(BM_MeasureTwoSided)->Arg(64)->Arg(256);

void BM_ScoreAll(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  FourierContext ctx(n);
  Engine rng = make_engine(3);
  const auto h = build_hash(ctx, HashGeometry::for_sparsity(n, 16), rng);
  const auto x = sample_sparse_spectrum(n, 3, rng);
  const auto y = measure_hash(h, make_one_sided_channel(x)).values;
  for (auto _ : state) benchmark::DoNotOptimize(score_all(h, y));
}
BENCHMARK(BM_ScoreAll)->Arg(64)->Arg(256)->Arg(1024);

void BM_AgileAlign(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ch = two_paths(n);
  AgileOptions opts;
  opts.k = 4;
  opts.b_count = 4;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    Engine rng = make_engine(4, trial++);
    benchmark::DoNotOptimize(agile_align(ch, rng, opts));
  }
}
BENCHMARK(BM_AgileAlign)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveSearch(benchmark::State& state) {
  const auto ch = two_paths(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(ch));
}
BENCHMARK(BM_ExhaustiveSearch)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Standard11ad(benchmark::State& state) {
  const auto ch = two_paths(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(standard_11ad(ch));
}
BENCHMARK(BM_Standard11ad)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
