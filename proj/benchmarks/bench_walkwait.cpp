#include <benchmark/benchmark.h>

#include "walkwait/engine.hpp"
#include "walkwait/mc.hpp"
#include "walkwait/quadrature.hpp"

namespace {

const walkwait::Scenario kS1{2.0, 0.5, 4.0, 20.0, 0.1};

void BM_CorrectedTotalUniform(benchmark::State& state) {
    const auto dist = walkwait::ArrivalDistribution::uniform(0.0, 0.25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(walkwait::corrected_total(kS1, dist).total);
    }
}
BENCHMARK(BM_CorrectedTotalUniform);

void BM_CorrectedTotalExponential(benchmark::State& state) {
    const auto dist = walkwait::ArrivalDistribution::exponential(4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(walkwait::corrected_total(kS1, dist).total);
    }
}
BENCHMARK(BM_CorrectedTotalExponential);

void BM_BreakevenTw(benchmark::State& state) {
    const auto dist = walkwait::ArrivalDistribution::uniform(0.0, 0.25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(walkwait::breakeven_tw(kS1, dist, 1e-6, 0.5));
    }
}
BENCHMARK(BM_BreakevenTw);

void BM_QuadratureShiftedBoarding(benchmark::State& state) {
    const auto dist = walkwait::ArrivalDistribution::exponential(4.0);
    for (auto _ : state) {
        const auto r = walkwait::integrate(
            [&](double t) { return dist.shifted_pdf(0.1, t) * (0.075 + t); }, 0.0, 0.1);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_QuadratureShiftedBoarding);

void BM_RunMc(benchmark::State& state) {
    const auto dist = walkwait::ArrivalDistribution::uniform(0.0, 0.25);
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            walkwait::run_mc(kS1, walkwait::StrategyKind::WalkThenWait, dist, trials, 42).mean);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(trials));
}
BENCHMARK(BM_RunMc)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
