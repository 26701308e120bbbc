#include <benchmark/benchmark.h>

#include "passby/dsp.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace {

std::vector<double> random_signal(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::vector<double> v(length);
    for (double& x : v)
        x = value(rng);
    return v;
}

} // namespace

static void BM_ConvolveDirect(benchmark::State& state) {
    const auto x = random_signal(static_cast<std::size_t>(state.range(0)), 1);
    const auto g = random_signal(static_cast<std::size_t>(state.range(1)), 2);
    for (auto _ : state) {
        auto w = passby::convolve_direct(x, g);
        benchmark::DoNotOptimize(w.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConvolveDirect)
    ->Args({1 << 12, 61})
    ->Args({1 << 12, 601})
    ->Args({1 << 15, 601});

static void BM_ConvolveFast(benchmark::State& state) {
    const auto x = random_signal(static_cast<std::size_t>(state.range(0)), 1);
    const auto g = random_signal(static_cast<std::size_t>(state.range(1)), 2);
    for (auto _ : state) {
        auto w = passby::convolve_fast(x, g);
        benchmark::DoNotOptimize(w.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConvolveFast)
    ->Args({1 << 12, 61})
    ->Args({1 << 12, 601})
    ->Args({1 << 15, 601})
    ->Args({1 << 20, 601});

static void BM_Decimate(benchmark::State& state) {
    passby::PressureSignal signal;
    signal.sample_rate_hz = 48000.0;
    signal.samples = random_signal(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        auto d = passby::decimate(signal, 480);
        benchmark::DoNotOptimize(d.samples.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decimate)->Arg(48000 * 10)->Arg(48000 * 90);

BENCHMARK_MAIN();
