#include "passby/detector.hpp"

#include "passby/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace passby {

void DetectorConfig::validate(double recording_duration_s) const {
    if (!(t_c_s > 0.0)) throw std::invalid_argument("config: t_c_s must be positive");
    if (!(effective_sigma_s() > 0.0)) throw std::invalid_argument("config: sigma_s must be positive");
    if (!(q > 0.0)) throw std::invalid_argument("config: q must be positive");
    if (decimation == 0) throw std::invalid_argument("config: decimation must be positive");
    if (refractory_s < 0.0) throw std::invalid_argument("config: refractory_s must be non-negative");
    if (!(recording_duration_s > 2.0 * t_c_s))
        throw std::invalid_argument("config: recording must be longer than twice t_c_s");

    if (auto_noise) return;
    if (noise_ranges.empty())
        throw std::invalid_argument("config: no noise ranges given (or enable auto noise)");

    std::vector<TimeRange> sorted = noise_ranges;
    std::sort(sorted.begin(), sorted.end(),
              [](const TimeRange& a, const TimeRange& b) { return a.start_s < b.start_s; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const TimeRange& range = sorted[i];
        if (!(range.start_s >= 0.0) || !(range.end_s > range.start_s))
            throw std::invalid_argument("config: malformed noise range");
        if (range.end_s > recording_duration_s + 1e-9)
            throw std::invalid_argument("config: noise range extends past the recording");
        if (i > 0 && sorted[i].start_s < sorted[i - 1].end_s)
            throw std::invalid_argument("config: noise ranges overlap");
    }
}

NoiseProfile noise_profile(const PressureSignal& rectified,
                           const std::vector<TimeRange>& ranges) {
    validate(rectified);
    if (ranges.empty())
        throw std::invalid_argument("noise_profile: no ranges");

    struct IndexRange { std::size_t lo, hi; };
    std::vector<IndexRange> idx;
    idx.reserve(ranges.size());
    const double rate = rectified.sample_rate_hz;
    const std::size_t len = rectified.samples.size();
    for (const TimeRange& range : ranges) {
        const long long lo = std::llround(range.start_s * rate);
        const long long hi = std::llround(range.end_s * rate);
        if (lo < 0 || hi > static_cast<long long>(len))
            throw std::invalid_argument("noise_profile: range [" + std::to_string(range.start_s)
                                        + ", " + std::to_string(range.end_s)
                                        + ") outside recording");
        if (lo >= hi)
            throw std::invalid_argument("noise_profile: range [" + std::to_string(range.start_s)
                                        + ", " + std::to_string(range.end_s)
                                        + ") selects no samples");
        idx.push_back({static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)});
    }
    std::sort(idx.begin(), idx.end(),
              [](const IndexRange& a, const IndexRange& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i].lo < idx[i - 1].hi)
            throw std::invalid_argument("noise_profile: ranges overlap");

    double sum = 0.0;
    std::size_t count = 0;
    for (const IndexRange& range : idx) {
        for (std::size_t i = range.lo; i < range.hi; ++i)
            sum += rectified.samples[i];
        count += range.hi - range.lo;
    }
    return NoiseProfile{sum / static_cast<double>(count),
                        static_cast<double>(count) / rate};
}

NoiseProfile noise_profile_auto(const PressureSignal& rectified) {
    validate(rectified);
    const std::size_t block = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(rectified.sample_rate_hz)));
    const std::size_t blocks = rectified.samples.size() / block;
    if (blocks == 0)
        throw std::invalid_argument("noise_profile_auto: recording shorter than one second");

    std::vector<double> means(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < block; ++i)
            sum += rectified.samples[b * block + i];
        means[b] = sum / static_cast<double>(block);
    }
    std::sort(means.begin(), means.end());
    const std::size_t pick = static_cast<std::size_t>(0.1 * static_cast<double>(blocks - 1));
    return NoiseProfile{means[pick],
                        static_cast<double>(block) / rectified.sample_rate_hz};
}

std::vector<std::size_t> find_negative_minima(std::span<const double> values) {
    std::vector<std::size_t> minima;
    const std::size_t n = values.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(values[i] < 0.0) || !(values[i - 1] > values[i])) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end + 1 < n && values[end + 1] == values[i]) ++end;
        if (end + 1 < n && values[end + 1] > values[i])
            minima.push_back(i);
        i = end + 1;
    }
    return minima;
}

namespace {

struct PipelineState {
    DetectionTraces traces;
    NoiseProfile noise;
    double kernel_sum = 0.0;
    double kernel_t_c_s = 0.0;
    double duration_s = 0.0;
};

PipelineState run_pipeline(const PressureSignal& signal, const DetectorConfig& config) {
    validate(signal);
    const double duration = signal.duration_s();
    config.validate(duration);

    PipelineState state;
    state.duration_s = duration;
    state.traces.rectified = rectify(signal);
    state.traces.decimated = decimate(state.traces.rectified, config.decimation);

    state.noise = config.auto_noise
        ? noise_profile_auto(state.traces.decimated)
        : noise_profile(state.traces.decimated, config.noise_ranges);

    const GaussianKernel kernel = make_gaussian(config.t_c_s, config.effective_sigma_s(),
                                                state.traces.decimated.sample_rate_hz);
    if (state.traces.decimated.samples.size() < kernel.size())
        throw std::invalid_argument("detect: recording shorter than the smoothing kernel");
    state.kernel_sum = kernel.sum();
    state.kernel_t_c_s = kernel.t_c_s;

    state.traces.smoothed = convolve_fast(as_derived(state.traces.decimated), kernel);
    state.traces.first_derivative = derivative(state.traces.smoothed);
    state.traces.second_derivative = derivative(state.traces.first_derivative);
    state.traces.candidate_minima = find_negative_minima(state.traces.second_derivative.values);
    return state;
}

std::vector<DetectionEvent> select_events(const PipelineState& state, double q,
                                          double refractory_s) {
    const double threshold = q * state.noise.n_bar * state.kernel_sum;
    std::vector<DetectionEvent> events;
    for (std::size_t j : state.traces.candidate_minima) {
        const double w_level = state.traces.smoothed.values[j];
        if (w_level < threshold) continue;
        const double time_s = state.traces.second_derivative.time_at(j);
        if (time_s < 0.0 || time_s > state.duration_s) continue;
        if (!events.empty() && time_s - events.back().time_s <= refractory_s) continue;
        events.push_back({time_s, w_level, state.traces.second_derivative.values[j]});
    }
    return events;
}

} // namespace

DetectionResult detect(const PressureSignal& signal, const DetectorConfig& config) {
    PipelineState state = run_pipeline(signal, config);
    DetectionResult result;
    result.events = select_events(state, config.q, config.refractory_s);
    result.noise = state.noise;
    result.threshold_w = config.q * state.noise.n_bar * state.kernel_sum;
    result.traces = std::move(state.traces);
    return result;
}

std::vector<std::pair<double, std::size_t>> threshold_sweep(
    const PressureSignal& signal, const DetectorConfig& config,
    const std::vector<double>& q_values) {
    if (q_values.empty())
        throw std::invalid_argument("threshold_sweep: no q values");
    for (std::size_t i = 0; i < q_values.size(); ++i) {
        if (q_values[i] < 0.0)
            throw std::invalid_argument("threshold_sweep: q values must be non-negative");
        if (i > 0 && q_values[i] < q_values[i - 1])
            throw std::invalid_argument("threshold_sweep: q values must be ascending");
    }

    const PipelineState state = run_pipeline(signal, config);
    std::vector<std::pair<double, std::size_t>> counts;
    counts.reserve(q_values.size());
    for (double q : q_values)
        counts.emplace_back(q, select_events(state, q, config.refractory_s).size());
    return counts;
}

} // namespace passby
