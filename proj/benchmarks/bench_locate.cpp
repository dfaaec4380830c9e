#include <benchmark/benchmark.h>

#include "delhier/bench.hpp"
#include "delhier/datasets.hpp"
#include "delhier/hierarchy.hpp"

using namespace delhier;

namespace {

void BM_build(benchmark::State& state, MethodPreset preset, Distribution dist) {
    const auto pts = generate({dist, static_cast<std::size_t>(state.range(0)), 1});
    for (auto _ : state) {
        Hierarchy h(preset_config(preset, 30.0, 1.0, 1));
        for (const Point& p : pts) h.insert(p);
        benchmark::DoNotOptimize(h.total_finite_triangles());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}

void BM_locate(benchmark::State& state, MethodPreset preset) {
    const auto pts = generate({Distribution::kRandom, static_cast<std::size_t>(state.range(0)), 2});
    Hierarchy h(preset_config(preset, 30.0, 1.0, 1));
    for (const Point& p : pts) h.insert(p);
    const auto queries = generate({Distribution::kRandom, 1024, 3});
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h.locate(queries[i % queries.size()]).nearest);
        ++i;
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_build, walk_random, MethodPreset::kWalk, Distribution::kRandom)
    ->Arg(5000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_build, msz_random, MethodPreset::kMsz, Distribution::kRandom)
    ->Arg(5000)
    ->Arg(50000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_build, hierarchy_random, MethodPreset::kHierarchy, Distribution::kRandom)
    ->Arg(5000)
    ->Arg(50000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_build, hierarchy_msz_random, MethodPreset::kHierarchyMsz,
                  Distribution::kRandom)
    ->Arg(5000)
    ->Arg(50000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_build, hierarchy_msz_ellipse2, MethodPreset::kHierarchyMsz,
                  Distribution::kEllipse2)
    ->Arg(50000)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_CAPTURE(BM_locate, hierarchy_msz, MethodPreset::kHierarchyMsz)->Arg(100000);
BENCHMARK_CAPTURE(BM_locate, msz, MethodPreset::kMsz)->Arg(100000);
