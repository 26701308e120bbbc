#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "passby/detector.hpp"
#include "passby/synth.hpp"

namespace passby::cli {

/// Parsed delimiter-separated file: one header line, then all-numeric rows.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Strict reader: comma delimiter, `.` decimal, LF or CRLF line endings.
/// Every row must have exactly as many fields as the header and every field
/// must parse as a double; violations raise std::runtime_error naming the
/// file and 1-based line number.
Csv read_csv(const std::filesystem::path& path);

/// First field of every row (e.g. the time column of detections or truth).
std::vector<double> first_column(const Csv& csv);

/// Events file for the synthesizer; also the ground-truth format.
/// Header must be exactly `t0_s,v_mps,d_m,source_level`.
std::vector<PassByEvent> read_events(const std::filesystem::path& path);

/// `%.17g` rendering, enough digits to reparse the exact same double.
std::string format_double(double value);

void write_detections(const std::filesystem::path& path,
                      const std::vector<DetectionEvent>& events);

void write_truth(const std::filesystem::path& path,
                 const std::vector<PassByEvent>& events);

/// Two-column `time_s,value` series for external plotting.
void write_series(const std::filesystem::path& path,
                  const std::vector<double>& times,
                  const std::vector<double>& values);

} // namespace passby::cli
