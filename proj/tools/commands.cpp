#include "commands.hpp"

#include "csv_io.hpp"
#include "passby/audio_io.hpp"
#include "passby/detector.hpp"
#include "passby/eval.hpp"
#include "passby/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace passby::cli {

namespace {

namespace fs = std::filesystem;

// Shortest representation that still reads naturally in a terminal;
// detection/trace files use the lossless format_double instead.
std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

WavBitDepth parse_depth(const std::string& name) {
    if (name == "pcm16") return WavBitDepth::pcm16;
    if (name == "pcm24") return WavBitDepth::pcm24;
    if (name == "float32") return WavBitDepth::float32;
    throw std::invalid_argument("unknown depth '" + name + "' (pcm16, pcm24, float32)");
}

double parse_double_strict(const std::string& text, const char* what) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
    return value;
}

std::vector<TimeRange> parse_noise_ranges(const std::string& text) {
    std::vector<TimeRange> ranges;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string part = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t colon = part.find(':');
        if (colon == std::string::npos || part.find(':', colon + 1) != std::string::npos)
            throw std::invalid_argument("--noise: expected start:end[,start:end...], got '"
                                        + part + "'");
        ranges.push_back({parse_double_strict(part.substr(0, colon), "--noise"),
                          parse_double_strict(part.substr(colon + 1), "--noise")});
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return ranges;
}

fs::path truth_path_for(const fs::path& wav_path) {
    fs::path p = wav_path;
    p.replace_extension();
    p += ".truth.csv";
    return p;
}

std::vector<double> sample_times(std::size_t count, double rate) {
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i)
        t[i] = static_cast<double>(i) / rate;
    return t;
}

std::vector<double> derived_times(const DerivedSignal& s) {
    std::vector<double> t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        t[i] = s.time_at(i);
    return t;
}

void write_traces(const fs::path& dir, const PressureSignal& original,
                  const DetectionResult& result) {
    fs::create_directories(dir);
    write_series(dir / "original.csv",
                 sample_times(original.size(), original.sample_rate_hz), original.samples);
    write_series(dir / "rectified.csv",
                 sample_times(result.traces.rectified.size(),
                              result.traces.rectified.sample_rate_hz),
                 result.traces.rectified.samples);
    write_series(dir / "decimated.csv",
                 sample_times(result.traces.decimated.size(),
                              result.traces.decimated.sample_rate_hz),
                 result.traces.decimated.samples);
    write_series(dir / "smoothed.csv", derived_times(result.traces.smoothed),
                 result.traces.smoothed.values);
    write_series(dir / "first_derivative.csv", derived_times(result.traces.first_derivative),
                 result.traces.first_derivative.values);
    write_series(dir / "second_derivative.csv", derived_times(result.traces.second_derivative),
                 result.traces.second_derivative.values);
    write_detections(dir / "selected.csv", result.events);
}

} // namespace

int run_synth(const SynthArgs& args) {
    SynthConfig config;
    config.duration_s = args.duration_s;
    config.sample_rate_hz = args.sample_rate_hz;
    config.noise_amplitude = args.noise_amplitude;
    config.rng_seed = args.seed;
    if (!args.events_path.empty())
        config.events = read_events(args.events_path);
    const WavBitDepth depth = parse_depth(args.depth);
    if (args.output_path.empty())
        throw std::invalid_argument("synth: --output is required");

    const SynthOutput out = synthesize(config);
    const std::size_t clipped = write_wav(out.signal, args.output_path, depth);

    std::vector<PassByEvent> sorted_events = config.events;
    std::sort(sorted_events.begin(), sorted_events.end(),
              [](const PassByEvent& a, const PassByEvent& b) { return a.t0_s < b.t0_s; });
    const fs::path truth = truth_path_for(args.output_path);
    write_truth(truth, sorted_events);

    std::cout << "wrote: " << args.output_path << " (" << fmt(config.duration_s)
              << " s at " << fmt(config.sample_rate_hz) << " Hz, "
              << config.events.size() << " events, seed " << config.rng_seed << ")\n";
    std::cout << "truth: " << truth.string() << "\n";
    if (clipped > 0)
        std::cerr << "warning: " << clipped << " samples clipped to [-1, 1]\n";
    return 0;
}

int run_detect(const DetectArgs& args) {
    DetectorConfig config;
    config.t_c_s = args.t_c_s;
    config.sigma_s = args.sigma_s;
    config.q = args.q;
    config.decimation = args.decimation;
    config.refractory_s = args.refractory_s;

    if (args.auto_noise && !args.noise_ranges.empty())
        throw std::invalid_argument("detect: give either --noise or --auto-noise, not both");
    if (!args.auto_noise && args.noise_ranges.empty())
        throw std::invalid_argument(
            "detect: background sections required (--noise start:end[,...] or --auto-noise)");
    config.auto_noise = args.auto_noise;
    if (!args.auto_noise)
        config.noise_ranges = parse_noise_ranges(args.noise_ranges);

    const bool sweep_mode = !args.q_sweep.empty();
    if (sweep_mode && (!args.output_path.empty() || !args.trace_dir.empty()))
        throw std::invalid_argument("detect: --q-sweep cannot be combined with --output/--trace");
    if (!sweep_mode && args.output_path.empty())
        throw std::invalid_argument("detect: --output is required");

    const PressureSignal signal = read_wav(args.input_path);

    std::cout << "input: " << args.input_path << " (" << fmt(signal.duration_s())
              << " s at " << fmt(signal.sample_rate_hz) << " Hz)\n";
    std::cout << "config: t_c_s=" << fmt(config.t_c_s)
              << " sigma_s=" << fmt(config.effective_sigma_s())
              << " q=" << fmt(config.q)
              << " decimation=" << config.decimation
              << " noise=" << (config.auto_noise ? std::string("auto") : args.noise_ranges)
              << " refractory_s=" << fmt(config.refractory_s) << "\n";

    if (sweep_mode) {
        const auto counts = threshold_sweep(signal, config, args.q_sweep);
        std::cout << "q,event_count\n";
        for (const auto& [q, count] : counts)
            std::cout << fmt(q) << ',' << count << '\n';
        return 0;
    }

    const DetectionResult result = detect(signal, config);
    std::cout << "noise: n_bar=" << fmt(result.noise.n_bar)
              << " over " << fmt(result.noise.total_noise_duration_s) << " s\n";
    std::cout << "threshold_w: " << fmt(result.threshold_w) << "\n";
    std::cout << "events: " << result.events.size() << "\n";

    write_detections(args.output_path, result.events);
    std::cout << "wrote: " << args.output_path << "\n";
    if (!args.trace_dir.empty()) {
        write_traces(args.trace_dir, signal, result);
        std::cout << "traces: " << args.trace_dir << "\n";
    }
    return 0;
}

int run_eval(const EvalArgs& args) {
    const std::vector<double> detections = first_column(read_csv(args.detections_path));
    const std::vector<double> truth = first_column(read_csv(args.truth_path));
    const EvalReport rep = report(detections, truth, args.tolerance_s);

    std::cout << "detections: " << args.detections_path << " (" << detections.size()
              << " rows)\n";
    std::cout << "truth: " << args.truth_path << " (" << truth.size() << " rows)\n";
    std::cout << "tolerance_s: " << fmt(rep.match_tolerance_s) << "\n\n";

    const auto row = [](const char* label, std::size_t count, double pct, bool have_pct) {
        char line[96];
        if (have_pct)
            std::snprintf(line, sizeof line, "%-16s %6zu  %7.2f%%\n", label, count, pct);
        else
            std::snprintf(line, sizeof line, "%-16s %6zu      n/a\n", label, count);
        return std::string(line);
    };
    const bool have = rep.ratios.has_value();
    const EvalReport::Ratios r = have ? *rep.ratios : EvalReport::Ratios{};
    std::cout << "Magnitude         Count     R.D.\n";
    std::cout << row("Events", rep.events_e, r.events_pct, have);
    std::cout << row("Detections", rep.detections_d, r.detections_pct, have);
    std::cout << row("False positives", rep.false_positives_p, r.false_positives_pct, have);
    std::cout << row("False negatives", rep.false_negatives_n, r.false_negatives_pct, have);
    std::cout << row("Efficacy", rep.efficacy_eta, r.efficacy_pct, have);

    if (!args.json_path.empty()) {
        nlohmann::json doc;
        doc["events"] = rep.events_e;
        doc["detections"] = rep.detections_d;
        doc["false_positives"] = rep.false_positives_p;
        doc["false_negatives"] = rep.false_negatives_n;
        doc["efficacy"] = rep.efficacy_eta;
        if (have) {
            doc["ratios_pct"] = {
                {"events", r.events_pct},
                {"detections", r.detections_pct},
                {"false_positives", r.false_positives_pct},
                {"false_negatives", r.false_negatives_pct},
                {"efficacy", r.efficacy_pct},
            };
        } else {
            doc["ratios_pct"] = nullptr;
        }
        doc["match_tolerance_s"] = rep.match_tolerance_s;
        doc["inputs"] = {
            {"detections", args.detections_path},
            {"truth", args.truth_path},
        };
        std::ofstream out(args.json_path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error(args.json_path + ": cannot open for writing");
        out << doc.dump(2) << '\n';
        std::cout << "\nreport: " << args.json_path << "\n";
    }
    return 0;
}

} // namespace passby::cli
