#include <benchmark/benchmark.h>

#include <cmath>

#include "satft/allan.hpp"
#include "satft/ippp.hpp"
#include "satft/linksim.hpp"
#include "satft/noise.hpp"
#include "satft/twcp.hpp"

using namespace satft;

namespace {

PhaseSeries white_fm(std::size_t n, std::uint64_t seed) {
    NoiseSpec spec;
    spec.white_fm = 1e-13;
    return synthesize_phase(spec, n, 1.0, seed);
}

void BM_SynthesizeWhiteFM(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        PhaseSeries p = white_fm(n, ++seed);
        benchmark::DoNotOptimize(p.x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SynthesizeWhiteFM)->Arg(1 << 16)->Arg(1 << 20);

void BM_SynthesizeFlickerFM(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    NoiseSpec spec;
    spec.flicker_fm = 2e-16;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        PhaseSeries p = synthesize_phase(spec, n, 1.0, ++seed);
        benchmark::DoNotOptimize(p.x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SynthesizeFlickerFM)->Arg(1 << 16)->Arg(1 << 19);

void BM_OverlappingAdev(benchmark::State& state) {
    PhaseSeries p = white_fm(1 << 20, 1);
    const auto m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        double d = overlapping_deviation(Estimator::adev, p.x, 1.0, m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_OverlappingAdev)->Arg(1)->Arg(64)->Arg(4096);

void BM_OverlappingMdev(benchmark::State& state) {
    PhaseSeries p = white_fm(1 << 20, 1);
    const auto m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        double d = overlapping_deviation(Estimator::mdev, p.x, 1.0, m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_OverlappingMdev)->Arg(64)->Arg(4096);

void BM_SimulateLink(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    NoiseSpec clock;
    clock.white_fm = 1e-13;
    PhaseSeries xa = synthesize_phase(clock, n, 1.0, 1);
    PhaseSeries xb = synthesize_phase(clock, n, 1.0, 2);
    SatelliteConfig sat;
    sat.lo_noise.white_fm = 1e-9;
    sat.oscillation.amplitude_m = 30e3;
    StationConfig sta, stb;
    CarrierPlan plan;
    for (auto _ : state) {
        FourPhaseSet p = simulate_four_phases(xa, xb, sat, sta, stb, plan, 3);
        benchmark::DoNotOptimize(p.l_ab.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SimulateLink)->Arg(86400);

void BM_CombineAndStitch(benchmark::State& state) {
    NoiseSpec maser;
    maser.white_fm = 1e-15 * std::sqrt(86400.0);
    const auto n = static_cast<std::size_t>(5 * 86400 / 30);
    PhaseSeries p = synthesize_phase(maser, n, 30.0, 4, Epoch{57850, 0.0});
    TimeDiffSeries truth = TimeDiffSeries::uniform(p.start, 30.0, p.x, Technique::ippp);
    NarrowlaneGrid grid;
    auto batches = simulate_ippp_observable(truth, grid, 5, 10e-12);
    for (auto _ : state) {
        StitchResult r = stitch(batches, grid);
        benchmark::DoNotOptimize(r.corrections.data());
    }
}
BENCHMARK(BM_CombineAndStitch);

} // namespace

BENCHMARK_MAIN();
