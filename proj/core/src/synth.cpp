#include "passby/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace passby {

void SynthConfig::validate() const {
    if (!(duration_s > 0.0)) throw std::invalid_argument("synth: duration must be positive");
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("synth: sample rate must be positive");
    if (!(noise_amplitude >= 0.0)) throw std::invalid_argument("synth: noise amplitude must be non-negative");
    for (const PassByEvent& e : events) {
        if (!(e.v_mps > 0.0)) throw std::invalid_argument("synth: event speed must be positive");
        if (!(e.d_m > 0.0)) throw std::invalid_argument("synth: event distance must be positive");
        if (!(e.source_level > 0.0)) throw std::invalid_argument("synth: event source level must be positive");
        if (!(e.t0_s >= 0.0) || !(e.t0_s <= duration_s))
            throw std::invalid_argument("synth: event time outside recording");
    }
}

double passby_envelope(const PassByEvent& event, double t_s) {
    const double dt = t_s - event.t0_s;
    const double r_sq = event.d_m * event.d_m + event.v_mps * event.v_mps * dt * dt;
    return event.source_level * event.d_m / std::sqrt(r_sq);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Each event's carrier stream is seeded from the master seed and the event's
// own parameters, so an event sounds the same whether it is synthesized alone
// or together with others.
std::uint64_t event_seed(std::uint64_t master, const PassByEvent& e) {
    std::uint64_t h = splitmix64(master ^ std::bit_cast<std::uint64_t>(e.t0_s));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(e.v_mps));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(e.d_m));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(e.source_level));
    return h;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class GaussianDraw {
public:
    explicit GaussianDraw(std::mt19937_64& rng) : rng_(rng) {}

    double operator()() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform01(rng_); // (0, 1], keeps log finite
        const double u2 = uniform01(rng_);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        have_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64& rng_;
    bool have_ = false;
    double cached_ = 0.0;
};

} // namespace

SynthOutput synthesize(const SynthConfig& config) {
    config.validate();

    const std::size_t n = static_cast<std::size_t>(
        std::llround(config.duration_s * config.sample_rate_hz));
    if (n == 0)
        throw std::invalid_argument("synth: duration shorter than one sample");

    SynthOutput out;
    out.signal.sample_rate_hz = config.sample_rate_hz;
    out.signal.samples.assign(n, 0.0);

    for (const PassByEvent& event : config.events) {
        std::mt19937_64 rng(event_seed(config.rng_seed, event));
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / config.sample_rate_hz;
            const double carrier = 2.0 * uniform01(rng) - 1.0;
            out.signal.samples[i] += passby_envelope(event, t) * carrier;
        }
    }

    if (config.noise_amplitude > 0.0) {
        std::mt19937_64 rng(splitmix64(config.rng_seed ^ 0xB5297A4D3F8C6E2FULL));
        GaussianDraw gauss(rng);
        for (std::size_t i = 0; i < n; ++i)
            out.signal.samples[i] += config.noise_amplitude * gauss();
    }

    out.truth.reserve(config.events.size());
    for (const PassByEvent& event : config.events)
        out.truth.push_back(event.t0_s);
    std::sort(out.truth.begin(), out.truth.end());
    return out;
}

} // namespace passby
