#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace passby::cli {

struct SynthArgs {
    double duration_s = 0.0;
    double sample_rate_hz = 48000.0;
    std::string events_path;      // empty: no pass-bys, pure noise
    double noise_amplitude = 0.0;
    std::uint64_t seed = 0;
    std::string depth = "pcm16";  // pcm16 | pcm24 | float32
    std::string output_path;
};

struct DetectArgs {
    std::string input_path;
    std::string output_path;
    double t_c_s = 3.0;
    std::optional<double> sigma_s;
    double q = 1.5;
    std::size_t decimation = 480;
    std::string noise_ranges;     // "start:end[,start:end...]", original time axis
    bool auto_noise = false;
    double refractory_s = 0.0;
    std::string trace_dir;
    std::vector<double> q_sweep;  // non-empty switches to sweep mode
};

struct EvalArgs {
    std::string detections_path;
    std::string truth_path;
    double tolerance_s = 2.0;
    std::string json_path;
};

int run_synth(const SynthArgs& args);
int run_detect(const DetectArgs& args);
int run_eval(const EvalArgs& args);

} // namespace passby::cli
