#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "delhier/predicates.hpp"
#include "delhier/rng.hpp"

using namespace delhier;

namespace {

std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point> pts(n);
    for (Point& p : pts) {
        p.x = static_cast<std::int32_t>(rng.next_in(-kCoordinateBound, kCoordinateBound));
        p.y = static_cast<std::int32_t>(rng.next_in(-kCoordinateBound, kCoordinateBound));
    }
    return pts;
}

void BM_orientation(benchmark::State& state) {
    const auto pts = random_points(4096, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        const Point a = pts[i % 4096], b = pts[(i + 1) % 4096], c = pts[(i + 2) % 4096];
        benchmark::DoNotOptimize(orientation(a, b, c));
        ++i;
    }
}
BENCHMARK(BM_orientation);

void BM_in_circle(benchmark::State& state) {
    const auto pts = random_points(4096, 2);
    std::vector<std::array<Point, 4>> cases;
    for (std::size_t i = 0; i + 3 < pts.size(); i += 4) {
        Point a = pts[i], b = pts[i + 1], c = pts[i + 2];
        if (orientation(a, b, c) == Orientation::kCollinear) continue;
        if (orientation(a, b, c) == Orientation::kClockwise) std::swap(b, c);
        cases.push_back({a, b, c, pts[i + 3]});
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& q = cases[i % cases.size()];
        benchmark::DoNotOptimize(in_circle(q[0], q[1], q[2], q[3]));
        ++i;
    }
}
BENCHMARK(BM_in_circle);

void BM_squared_distance(benchmark::State& state) {
    const auto pts = random_points(4096, 3);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(squared_distance(pts[i % 4096], pts[(i + 7) % 4096]));
        ++i;
    }
}
BENCHMARK(BM_squared_distance);

}  // namespace
