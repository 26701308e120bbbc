#include "commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

// One config-file key: the long flag it mirrors and how to store its value.
struct ConfigKey {
    const char* flag; // e.g. "--t-c"; the file key is the flag without dashes
    std::function<void(const std::string&)> apply;
};

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
    throw std::invalid_argument("config key '" + key + "': expected " + expected
                                + ", got '" + value + "'");
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) bad_value(key, value, "a number");
    return out;
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& value) {
    Int out = 0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) bad_value(key, value, "a non-negative integer");
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    bad_value(key, value, "true/false/1/0");
}

std::vector<double> to_doubles(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        if (comma == std::string::npos) comma = value.size();
        out.push_back(to_double(key, value.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

// Applies a flat key=value file to one subcommand. A key mirrors the long
// option name without the leading dashes; values given on the command line
// win over the file. '#' starts a comment.
void apply_config_file(const CLI::App& cmd, const std::string& path,
                       const std::vector<ConfigKey>& keys) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument(cmd.get_name() + ": cannot open config file '" + path + "'");

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;

        const auto where = [&] { return path + ":" + std::to_string(line_no) + ": "; };
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where() + "expected key=value, got '" + text + "'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));

        const ConfigKey* match = nullptr;
        for (const ConfigKey& candidate : keys)
            if (key == candidate.flag + 2) match = &candidate;
        if (match == nullptr)
            throw std::invalid_argument(where() + "unknown key '" + key + "'");

        if (cmd.count(match->flag) > 0) continue;
        try {
            match->apply(value);
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument(where() + err.what());
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vehicle pass-by detection in roadside acoustic recordings"};
    app.require_subcommand(1);

    passby::cli::SynthArgs synth;
    std::string synth_config;
    CLI::App* s = app.add_subcommand(
        "synth", "Generate a synthetic roadside recording plus ground truth");
    s->add_option("--config", synth_config, "Flat key=value config file; flags override it");
    s->add_option("--duration", synth.duration_s, "Recording length in seconds");
    s->add_option("--rate", synth.sample_rate_hz, "Sample rate in Hz")->capture_default_str();
    s->add_option("--events", synth.events_path,
                  "Pass-by list (t0_s,v_mps,d_m,source_level); omit for pure noise");
    s->add_option("--noise-amplitude", synth.noise_amplitude,
                  "RMS of the Gaussian background noise")->capture_default_str();
    s->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
    s->add_option("--depth", synth.depth, "WAV sample format: pcm16, pcm24, float32")
        ->capture_default_str();
    s->add_option("-o,--output", synth.output_path,
                  "Output WAV path; truth goes next to it as <name>.truth.csv");
    const std::vector<ConfigKey> synth_keys = {
        {"--duration", [&](const std::string& v) { synth.duration_s = to_double("duration", v); }},
        {"--rate", [&](const std::string& v) { synth.sample_rate_hz = to_double("rate", v); }},
        {"--events", [&](const std::string& v) { synth.events_path = v; }},
        {"--noise-amplitude",
         [&](const std::string& v) { synth.noise_amplitude = to_double("noise-amplitude", v); }},
        {"--seed", [&](const std::string& v) { synth.seed = to_integer<std::uint64_t>("seed", v); }},
        {"--depth", [&](const std::string& v) { synth.depth = v; }},
        {"--output", [&](const std::string& v) { synth.output_path = v; }},
    };

    passby::cli::DetectArgs det;
    std::string det_config;
    CLI::App* d = app.add_subcommand("detect", "Detect pass-by events in a WAV recording");
    d->add_option("--config", det_config, "Flat key=value config file; flags override it");
    d->add_option("input", det.input_path, "Input WAV file")->required();
    d->add_option("-o,--output", det.output_path, "Detections CSV (time_s,w_level)");
    d->add_option("--t-c", det.t_c_s, "Gaussian center time in seconds")->capture_default_str();
    d->add_option("--sigma", det.sigma_s, "Gaussian width in seconds (default: t_c / 3)");
    d->add_option("--q", det.q, "Threshold multiplier on the background level")
        ->capture_default_str();
    d->add_option("--decimation", det.decimation, "Envelope block-mean factor")
        ->capture_default_str();
    d->add_option("--noise", det.noise_ranges,
                  "Vehicle-free sections, seconds: start:end[,start:end...]");
    d->add_flag("--auto-noise", det.auto_noise,
                "Estimate the background level from quiet one-second blocks");
    d->add_option("--refractory", det.refractory_s,
                  "Drop events this many seconds after a kept one")->capture_default_str();
    d->add_option("--trace", det.trace_dir, "Directory for per-stage series (plot-ready CSV)");
    d->add_option("--q-sweep", det.q_sweep,
                  "Comma-separated ascending q values; prints q,event_count instead of detecting")
        ->delimiter(',');
    const std::vector<ConfigKey> detect_keys = {
        {"--output", [&](const std::string& v) { det.output_path = v; }},
        {"--t-c", [&](const std::string& v) { det.t_c_s = to_double("t-c", v); }},
        {"--sigma", [&](const std::string& v) { det.sigma_s = to_double("sigma", v); }},
        {"--q", [&](const std::string& v) { det.q = to_double("q", v); }},
        {"--decimation",
         [&](const std::string& v) { det.decimation = to_integer<std::size_t>("decimation", v); }},
        {"--noise", [&](const std::string& v) { det.noise_ranges = v; }},
        {"--auto-noise", [&](const std::string& v) { det.auto_noise = to_bool("auto-noise", v); }},
        {"--refractory",
         [&](const std::string& v) { det.refractory_s = to_double("refractory", v); }},
        {"--trace", [&](const std::string& v) { det.trace_dir = v; }},
        {"--q-sweep", [&](const std::string& v) { det.q_sweep = to_doubles("q-sweep", v); }},
    };

    passby::cli::EvalArgs eval;
    std::string eval_config;
    CLI::App* e = app.add_subcommand("eval", "Score detections against ground truth");
    e->add_option("--config", eval_config, "Flat key=value config file; flags override it");
    e->add_option("detections", eval.detections_path, "Detections CSV (time in column 1)")
        ->required();
    e->add_option("truth", eval.truth_path, "Ground-truth CSV (time in column 1)")->required();
    e->add_option("--tolerance", eval.tolerance_s,
                  "Max |detection - truth| gap counted as a match, seconds")
        ->capture_default_str();
    e->add_option("--json", eval.json_path, "Also write the report as JSON to this path");
    const std::vector<ConfigKey> eval_keys = {
        {"--tolerance",
         [&](const std::string& v) { eval.tolerance_s = to_double("tolerance", v); }},
        {"--json", [&](const std::string& v) { eval.json_path = v; }},
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (s->parsed()) {
            if (!synth_config.empty()) apply_config_file(*s, synth_config, synth_keys);
            if (s->count("--duration") == 0 && synth.duration_s <= 0.0)
                throw std::invalid_argument("synth: --duration is required (flag or config)");
            if (synth.output_path.empty())
                throw std::invalid_argument("synth: --output is required (flag or config)");
            return passby::cli::run_synth(synth);
        }
        if (d->parsed()) {
            if (!det_config.empty()) apply_config_file(*d, det_config, detect_keys);
            return passby::cli::run_detect(det);
        }
        if (!eval_config.empty()) apply_config_file(*e, eval_config, eval_keys);
        return passby::cli::run_eval(eval);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
