#pragma once

#include <cstddef>
#include <vector>

namespace passby {

/// Uniformly sampled sound-pressure waveform. Samples are dimensionless,
/// normalized so that digital full scale is 1.0.
struct PressureSignal {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return static_cast<double>(samples.size()) / sample_rate_hz; }
};

/// A series derived from a recording (envelope, smoothed trace, derivative).
/// time_offset_s maps index 0 back onto the recording's time axis:
///   time(i) = i / sample_rate_hz + time_offset_s.
struct DerivedSignal {
    std::vector<double> values;
    double sample_rate_hz = 0.0;
    double time_offset_s = 0.0;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const {
        return static_cast<double>(i) / sample_rate_hz + time_offset_s;
    }
};

/// Wraps a waveform as a derived series anchored at time 0.
DerivedSignal as_derived(const PressureSignal& signal);

/// Throws std::invalid_argument unless the signal is non-empty, has a
/// positive sample rate, and every sample is finite.
void validate(const PressureSignal& signal);

} // namespace passby
