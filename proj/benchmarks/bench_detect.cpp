#include <benchmark/benchmark.h>

#include "passby/detector.hpp"
#include "passby/synth.hpp"

static void BM_Synthesize(benchmark::State& state) {
    passby::SynthConfig config;
    config.duration_s = static_cast<double>(state.range(0));
    config.sample_rate_hz = 8000.0;
    config.noise_amplitude = 0.02;
    config.rng_seed = 5;
    config.events = {{10.0, 14.0, 5.0, 0.5}, {20.0, 14.0, 5.0, 0.5}};
    for (auto _ : state) {
        auto out = passby::synthesize(config);
        benchmark::DoNotOptimize(out.signal.samples.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 8000);
}
BENCHMARK(BM_Synthesize)->Arg(30)->Arg(90);

static void BM_Detect(benchmark::State& state) {
    passby::SynthConfig config;
    config.duration_s = static_cast<double>(state.range(0));
    config.sample_rate_hz = 8000.0;
    config.noise_amplitude = 0.02;
    config.rng_seed = 5;
    config.events = {{10.0, 14.0, 5.0, 0.5}, {20.0, 14.0, 5.0, 0.5}};
    const passby::SynthOutput syn = passby::synthesize(config);

    passby::DetectorConfig detector;
    detector.decimation = 80;
    detector.noise_ranges = {{0.0, 5.0}, {25.0, config.duration_s}};
    for (auto _ : state) {
        auto result = passby::detect(syn.signal, detector);
        benchmark::DoNotOptimize(result.events.data());
    }
    state.SetItemsProcessed(state.iterations() * syn.signal.size());
}
BENCHMARK(BM_Detect)->Arg(30)->Arg(90);
