// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "polyent/bowen.hpp"
#include "polyent/constructions.hpp"
#include "polyent/tower.hpp"

using namespace polyent;

namespace {

const CircleTower& tower() {
    static const CircleTower t(SequenceFamily::power(2));
    return t;
}

const std::vector<TowerPoint>& sample() {
    static const auto s = tower().sample({500, 40, kDefaultSeed});
    return s;
}

void BM_BowenStepping(benchmark::State& st) {
    TowerPoint p(0.1, Level::finite(7)), q(0.3, Level::finite(9));
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(reference::bowen_dist(tower(), p, q, n));
}
BENCHMARK(BM_BowenStepping)->Arg(64)->Arg(4096);

void BM_BowenClosedForm(benchmark::State& st) {
    TowerPoint p(0.1, Level::finite(7)), q(0.3, Level::finite(9));
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(tower().bowen_dist(p, q, n, kNoStop));
}
BENCHMARK(BM_BowenClosedForm)->Arg(64)->Arg(4096);

void BM_GreedySeparatedSerial(benchmark::State& st) {
    std::span<const TowerPoint> v(sample());
    for (auto _ : st) benchmark::DoNotOptimize(reference::greedy_separated_indices(tower(), v, 1024, 0.1));
}
BENCHMARK(BM_GreedySeparatedSerial)->Unit(benchmark::kMillisecond);

void BM_GreedySeparatedParallel(benchmark::State& st) {
    std::span<const TowerPoint> v(sample());
    for (auto _ : st) benchmark::DoNotOptimize(greedy_separated_indices(tower(), v, 1024, 0.1));
}
BENCHMARK(BM_GreedySeparatedParallel)->Unit(benchmark::kMillisecond);

void BM_VerifySpanningSerial(benchmark::State& st) {
    auto a = build_A(1000, 0.1, tower().family());
    const auto set = a.points.materialize();
    for (auto _ : st)
        benchmark::DoNotOptimize(reference::verify_spanning(tower(), std::span<const TowerPoint>(set),
                                                            std::span<const TowerPoint>(sample()), 1000, 0.1));
}
BENCHMARK(BM_VerifySpanningSerial)->Unit(benchmark::kMillisecond);

void BM_VerifySpanningParallel(benchmark::State& st) {
    auto a = build_A(1000, 0.1, tower().family());
    const auto set = a.points.materialize();
    for (auto _ : st)
        benchmark::DoNotOptimize(verify_spanning(tower(), std::span<const TowerPoint>(set),
                                                 std::span<const TowerPoint>(sample()), 1000, 0.1));
}
BENCHMARK(BM_VerifySpanningParallel)->Unit(benchmark::kMillisecond);

void BM_VerifySeparatedSerial(benchmark::State& st) {
    auto s = build_S(10000, 0.1, 2);
    const auto set = s.points.materialize();
    for (auto _ : st)
        benchmark::DoNotOptimize(reference::verify_separated(tower(), std::span<const TowerPoint>(set), 10000, 0.1));
}
BENCHMARK(BM_VerifySeparatedSerial)->Unit(benchmark::kMillisecond);

void BM_VerifySeparatedParallel(benchmark::State& st) {
    auto s = build_S(10000, 0.1, 2);
    const auto set = s.points.materialize();
    for (auto _ : st)
        benchmark::DoNotOptimize(verify_separated(tower(), std::span<const TowerPoint>(set), 10000, 0.1));
}
BENCHMARK(BM_VerifySeparatedParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
