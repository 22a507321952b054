// Microbenchmarks for the hot paths: big-integer table builds, the
// enumeration oracle, full-moment enumeration, sampling throughput, and the
// interval-certified bound sweep.

#include <benchmark/benchmark.h>

#include "partlab/bounds.hpp"
#include "partlab/count_table.hpp"
#include "partlab/moments.hpp"
#include "partlab/sampler.hpp"

namespace {

using namespace partlab;

void BM_CountTableBuild(benchmark::State& state) {
    const auto max_n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        CountTable table = CountTable::build(max_n);
        benchmark::DoNotOptimize(table.at(max_n));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountTableBuild)->Range(1 << 10, 1 << 15)->Complexity();

void BM_EnumerationOracle(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_by_enumeration(n));
}
BENCHMARK(BM_EnumerationOracle)->Arg(40)->Arg(80)->Arg(120);

void BM_EnumerateMoments(benchmark::State& state) {
    const auto m = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        const MomentSummary s = enumerate_moments(m);
        benchmark::DoNotOptimize(s.size_var.get_num().get_ui());
    }
}
BENCHMARK(BM_EnumerateMoments)->DenseRange(10, 18, 4);

void BM_SampleSize(benchmark::State& state) {
    const auto m = static_cast<unsigned>(state.range(0));
    std::uint64_t index = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_size(m, 1, index++));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * m);
}
BENCHMARK(BM_SampleSize)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ExplicitBoundSweep(benchmark::State& state) {
    static const CountTable table = CountTable::build(4000);
    for (auto _ : state) {
        const SweepSummary sweep = verify_explicit_bound(2, 4000, table, /*keep_rows=*/false);
        benchmark::DoNotOptimize(sweep.holds);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 3999);
}
BENCHMARK(BM_ExplicitBoundSweep);

} // namespace

BENCHMARK_MAIN();
