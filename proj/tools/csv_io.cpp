#include "csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace passby::cli {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_field(const std::filesystem::path& path, std::size_t line,
                   const std::string& field) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        fail(path, line, "cannot parse '" + field + "' as a number");
    return value;
}

} // namespace

Csv read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(path.string() + ": cannot open file");

    Csv csv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
                line.erase(0, 3);
            csv.header = split_fields(line);
            if (csv.header.size() == 1 && csv.header[0].empty())
                fail(path, line_no, "empty header line");
            continue;
        }
        if (line.empty()) {
            if (in.peek() != std::char_traits<char>::eof())
                fail(path, line_no, "blank line inside the table");
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != csv.header.size())
            fail(path, line_no, "expected " + std::to_string(csv.header.size())
                                + " columns, found " + std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const std::string& field : fields)
            row.push_back(parse_field(path, line_no, field));
        csv.rows.push_back(std::move(row));
    }
    if (line_no == 0)
        throw std::runtime_error(path.string() + ": empty file (missing header)");
    return csv;
}

std::vector<double> first_column(const Csv& csv) {
    std::vector<double> out;
    out.reserve(csv.rows.size());
    for (const std::vector<double>& row : csv.rows)
        out.push_back(row[0]);
    return out;
}

std::vector<PassByEvent> read_events(const std::filesystem::path& path) {
    const Csv csv = read_csv(path);
    const std::vector<std::string> expected = {"t0_s", "v_mps", "d_m", "source_level"};
    if (csv.header != expected)
        throw std::runtime_error(path.string()
                                 + ":1: expected header 't0_s,v_mps,d_m,source_level'");
    std::vector<PassByEvent> events;
    events.reserve(csv.rows.size());
    for (const std::vector<double>& row : csv.rows)
        events.push_back({row[0], row[1], row[2], row[3]});
    return events;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void write_lines(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    out << content;
    if (!out)
        throw std::runtime_error(path.string() + ": write failed");
}

} // namespace

void write_detections(const std::filesystem::path& path,
                      const std::vector<DetectionEvent>& events) {
    std::ostringstream out;
    out << "time_s,w_level\n";
    for (const DetectionEvent& e : events)
        out << format_double(e.time_s) << ',' << format_double(e.w_level) << '\n';
    write_lines(path, out.str());
}

void write_truth(const std::filesystem::path& path,
                 const std::vector<PassByEvent>& events) {
    std::ostringstream out;
    out << "t0_s,v_mps,d_m,source_level\n";
    for (const PassByEvent& e : events)
        out << format_double(e.t0_s) << ',' << format_double(e.v_mps) << ','
            << format_double(e.d_m) << ',' << format_double(e.source_level) << '\n';
    write_lines(path, out.str());
}

void write_series(const std::filesystem::path& path,
                  const std::vector<double>& times,
                  const std::vector<double>& values) {
    std::string content = "time_s,value\n";
    content.reserve(content.size() + times.size() * 24);
    char buf[96];
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", times[i], values[i]);
        content += buf;
    }
    write_lines(path, content);
}

} // namespace passby::cli
