#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "passby/dsp.hpp"
#include "passby/signal.hpp"

namespace passby {

/// Half-open time interval [start_s, end_s) on the recording's axis.
struct TimeRange {
    double start_s = 0.0;
    double end_s = 0.0;
};

struct DetectorConfig {
    double t_c_s = 3.0;                 ///< kernel center; support is [0, 2 t_c]
    std::optional<double> sigma_s;      ///< kernel width; defaults to t_c / 3
    double q = 1.5;                     ///< threshold multiplier on the noise level
    std::size_t decimation = 480;       ///< envelope block-mean factor (48 kHz -> 100 Hz)
    std::vector<TimeRange> noise_ranges;///< vehicle-free sections, original time axis
    bool auto_noise = false;            ///< 10th-percentile block-mean fallback
    double refractory_s = 0.0;          ///< drop events this close after a kept one

    double effective_sigma_s() const { return sigma_s ? *sigma_s : t_c_s / 3.0; }

    /// Throws std::invalid_argument on non-positive t_c/sigma/q, zero
    /// decimation, negative refractory, or (unless auto_noise) noise ranges
    /// that are empty, inverted, overlapping, or outside the recording.
    void validate(double recording_duration_s) const;
};

/// Background level estimated from the rectified envelope.
struct NoiseProfile {
    double n_bar = 0.0;                 ///< mean rectified amplitude
    double total_noise_duration_s = 0.0;
};

struct DetectionEvent {
    double time_s = 0.0;    ///< on the original recording's axis
    double w_level = 0.0;   ///< smoothed-envelope value at the detection index
    double w2_value = 0.0;  ///< (negative) second-derivative value at the minimum
};

/// Per-stage snapshots of one detection run, in pipeline order.
struct DetectionTraces {
    PressureSignal rectified;
    PressureSignal decimated;
    DerivedSignal smoothed;
    DerivedSignal first_derivative;
    DerivedSignal second_derivative;
    std::vector<std::size_t> candidate_minima; ///< indices into second_derivative
};

struct DetectionResult {
    std::vector<DetectionEvent> events;    ///< in time order
    NoiseProfile noise;
    double threshold_w = 0.0;              ///< q * n_bar * kernel gain
    DetectionTraces traces;
};

/// Mean rectified amplitude over the union of the given vehicle-free
/// sections. Ranges are interpreted on the signal's own time axis, so the
/// same ranges work before and after decimation.
NoiseProfile noise_profile(const PressureSignal& rectified,
                           const std::vector<TimeRange>& ranges);

/// Fallback noise estimate when no vehicle-free sections are known: the
/// 10th percentile of one-second block means of the rectified envelope.
/// Never the default; callers opt in (CLI flag --auto-noise).
NoiseProfile noise_profile_auto(const PressureSignal& rectified);

/// Indices j with values[j] < 0 that are strict local minima; a flat run of
/// equal negative values flanked by strictly larger neighbors yields its
/// first index. Requires at least 3 samples.
std::vector<std::size_t> find_negative_minima(std::span<const double> values);

/// Runs the full pipeline: rectify, decimate, estimate noise, smooth with
/// the Gaussian, differentiate twice, pick negative minima of the second
/// derivative, keep those whose smoothed level reaches q times the scaled
/// noise level, map indices back to recording time (-t_c alignment), and
/// apply the refractory merge.
DetectionResult detect(const PressureSignal& signal, const DetectorConfig& config);

/// Event count per threshold multiplier, one pipeline run shared across all
/// q values. q_values must be non-negative and ascending; q = 0 disables
/// the level test and counts every candidate minimum.
std::vector<std::pair<double, std::size_t>> threshold_sweep(
    const PressureSignal& signal,
    const DetectorConfig& config,
    const std::vector<double>& q_values);

} // namespace passby
