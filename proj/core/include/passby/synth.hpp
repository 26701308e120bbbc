#pragma once

#include <cstdint>
#include <vector>

#include "passby/signal.hpp"

namespace passby {

/// One vehicle crossing the point of closest approach at t0. Defaults match
/// a single-lane roadside setup: microphone 5 m from the lane center,
/// vehicles near 50 km/h.
struct PassByEvent {
    double t0_s = 0.0;
    double v_mps = 14.0;
    double d_m = 5.0;
    double source_level = 0.5; ///< peak pressure amplitude at closest approach
};

struct SynthConfig {
    double duration_s = 0.0;
    double sample_rate_hz = 48000.0;
    std::vector<PassByEvent> events;
    double noise_amplitude = 0.0; ///< RMS of the Gaussian background noise
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// Closest-approach instants, ascending.
using GroundTruth = std::vector<double>;

/// Pressure amplitude of a single pass-by at time t:
///   A(t) = source_level * d / sqrt(d^2 + v^2 (t - t0)^2).
/// Intensity falls off as 1/r^2 with r^2 = d^2 + v^2 (t - t0)^2; pressure
/// amplitude is its square root, normalized to source_level at r = d.
double passby_envelope(const PassByEvent& event, double t_s);

struct SynthOutput {
    PressureSignal signal;
    GroundTruth truth;
};

/// signal(t) = sum over events of A_e(t) * carrier_e(t) + background(t).
/// Each carrier is white noise in [-1, 1) seeded from the master seed and
/// the event's own parameters, so an event's contribution is independent of
/// the rest of the event list; the background is Gaussian with the
/// configured RMS. Output is bit-identical for a fixed config.
SynthOutput synthesize(const SynthConfig& config);

} // namespace passby
