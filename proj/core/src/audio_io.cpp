#include "passby/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace passby {

DerivedSignal as_derived(const PressureSignal& signal) {
    return DerivedSignal{signal.samples, signal.sample_rate_hz, 0.0};
}

void validate(const PressureSignal& signal) {
    if (!(signal.sample_rate_hz > 0.0))
        throw std::invalid_argument("signal: sample rate must be positive");
    if (signal.samples.empty())
        throw std::invalid_argument("signal: no samples");
    for (double s : signal.samples)
        if (!std::isfinite(s))
            throw std::invalid_argument("signal: non-finite sample");
}

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

std::string codec_name(std::uint16_t code) {
    switch (code) {
        case 0x0002: return "ADPCM";
        case 0x0006: return "A-law";
        case 0x0007: return "mu-law";
        case 0x0011: return "IMA ADPCM";
        case 0x0050: return "MPEG";
        case 0x0055: return "MPEG layer 3";
        default: return "format code " + std::to_string(code);
    }
}

struct Reader {
    const std::vector<unsigned char>& bytes;
    std::size_t pos = 0;

    bool has(std::size_t n) const { return pos + n <= bytes.size(); }
    std::uint16_t u16() { std::uint16_t v = bytes[pos] | (bytes[pos + 1] << 8); pos += 2; return v; }
    std::uint32_t u32() {
        std::uint32_t v = bytes[pos] | (bytes[pos + 1] << 8)
                        | (std::uint32_t(bytes[pos + 2]) << 16) | (std::uint32_t(bytes[pos + 3]) << 24);
        pos += 4;
        return v;
    }
    std::string tag() { std::string t(reinterpret_cast<const char*>(&bytes[pos]), 4); pos += 4; return t; }
};

struct FmtChunk {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits = 0;
};

double decode_sample(const unsigned char* p, std::uint16_t format, std::uint16_t bits) {
    if (format == kFormatFloat) {
        float f;
        std::memcpy(&f, p, 4);
        return static_cast<double>(f);
    }
    if (bits == 16) {
        std::int16_t v = static_cast<std::int16_t>(p[0] | (p[1] << 8));
        return static_cast<double>(v) / 32768.0;
    }
    // 24-bit: little-endian, sign-extend from bit 23
    std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
    if (v & 0x800000) v -= 0x1000000;
    return static_cast<double>(v) / 8388608.0;
}

void append_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(v & 0xFF);
    out.push_back((v >> 8) & 0xFF);
}

void append_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(v & 0xFF);
    out.push_back((v >> 8) & 0xFF);
    out.push_back((v >> 16) & 0xFF);
    out.push_back((v >> 24) & 0xFF);
}

void append_tag(std::vector<unsigned char>& out, const char* tag) {
    out.insert(out.end(), tag, tag + 4);
}

} // namespace

PressureSignal read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 12) fail(path, "not a RIFF/WAVE file (too short)");

    Reader r{bytes};
    if (r.tag() != "RIFF") fail(path, "not a RIFF file");
    r.u32(); // riff size; chunk walk below is bounded by the real file size
    if (r.tag() != "WAVE") fail(path, "not a WAVE file");

    FmtChunk fmt;
    bool have_fmt = false;
    std::size_t data_pos = 0;
    std::size_t data_len = 0;

    while (r.has(8)) {
        const std::string tag = r.tag();
        const std::uint32_t size = r.u32();
        if (!r.has(size)) fail(path, "truncated chunk '" + tag + "'");
        if (tag == "fmt ") {
            if (size < 16) fail(path, "fmt chunk too short");
            Reader f{bytes, r.pos};
            fmt.format = f.u16();
            fmt.channels = f.u16();
            fmt.sample_rate = f.u32();
            f.u32(); // byte rate
            f.u16(); // block align
            fmt.bits = f.u16();
            if (fmt.format == kFormatExtensible) {
                // sub-format GUID starts with the real format code
                if (size < 40) fail(path, "extensible fmt chunk too short");
                Reader g{bytes, r.pos + 24};
                fmt.format = g.u16();
            }
            have_fmt = true;
        } else if (tag == "data") {
            data_pos = r.pos;
            data_len = size;
        }
        r.pos += size + (size & 1); // chunks are word-aligned
    }

    if (!have_fmt) fail(path, "missing fmt chunk");
    if (data_pos == 0) fail(path, "missing data chunk");
    if (fmt.format != kFormatPcm && fmt.format != kFormatFloat)
        fail(path, "unsupported codec: " + codec_name(fmt.format));
    if (fmt.format == kFormatPcm && fmt.bits != 16 && fmt.bits != 24)
        fail(path, "unsupported PCM bit depth: " + std::to_string(fmt.bits));
    if (fmt.format == kFormatFloat && fmt.bits != 32)
        fail(path, "unsupported float bit depth: " + std::to_string(fmt.bits));
    if (fmt.channels == 0) fail(path, "zero channels");
    if (fmt.sample_rate == 0) fail(path, "zero sample rate");

    const std::size_t bytes_per_sample = fmt.bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
    const std::size_t frames = data_len / frame_bytes;
    if (frames == 0) fail(path, "empty data chunk");

    PressureSignal out;
    out.sample_rate_hz = static_cast<double>(fmt.sample_rate);
    out.samples.resize(frames);
    const unsigned char* p = bytes.data() + data_pos;
    for (std::size_t i = 0; i < frames; ++i, p += frame_bytes) {
        double acc = 0.0;
        for (std::size_t c = 0; c < fmt.channels; ++c)
            acc += decode_sample(p + c * bytes_per_sample, fmt.format, fmt.bits);
        out.samples[i] = acc / fmt.channels;
    }
    for (double s : out.samples)
        if (!std::isfinite(s)) fail(path, "non-finite sample in data");
    return out;
}

std::size_t write_wav(const PressureSignal& signal,
                      const std::filesystem::path& path,
                      WavBitDepth depth) {
    validate(signal);

    const std::size_t frames = signal.samples.size();
    const std::uint16_t bits = depth == WavBitDepth::pcm16 ? 16
                             : depth == WavBitDepth::pcm24 ? 24 : 32;
    const std::uint16_t format = depth == WavBitDepth::float32 ? kFormatFloat : kFormatPcm;
    const std::size_t bytes_per_sample = bits / 8;
    const std::uint32_t rate = static_cast<std::uint32_t>(std::llround(signal.sample_rate_hz));
    if (rate == 0)
        throw std::invalid_argument("write_wav: sample rate rounds to zero");

    std::size_t clipped = 0;
    std::vector<unsigned char> data;
    data.reserve(frames * bytes_per_sample);
    for (double s : signal.samples) {
        if (s > 1.0) { s = 1.0; ++clipped; }
        else if (s < -1.0) { s = -1.0; ++clipped; }
        switch (depth) {
            case WavBitDepth::pcm16: {
                const long long v = std::min<long long>(std::llround(s * 32768.0), 32767);
                append_u16(data, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
                break;
            }
            case WavBitDepth::pcm24: {
                const long long v = std::min<long long>(std::llround(s * 8388608.0), 8388607);
                const std::uint32_t u = static_cast<std::uint32_t>(static_cast<std::int32_t>(v));
                data.push_back(u & 0xFF);
                data.push_back((u >> 8) & 0xFF);
                data.push_back((u >> 16) & 0xFF);
                break;
            }
            case WavBitDepth::float32: {
                const float f = static_cast<float>(s);
                std::uint32_t u;
                std::memcpy(&u, &f, 4);
                append_u32(data, u);
                break;
            }
        }
    }

    const bool is_float = format == kFormatFloat;
    const std::uint32_t fmt_size = is_float ? 18 : 16;
    const std::uint32_t data_size = static_cast<std::uint32_t>(data.size());
    const std::uint32_t fact_size = is_float ? 12 : 0; // fact chunk for non-PCM
    const std::uint32_t riff_size = 4 + (8 + fmt_size) + fact_size + (8 + data_size) + (data_size & 1);

    std::vector<unsigned char> out;
    out.reserve(8 + riff_size);
    append_tag(out, "RIFF");
    append_u32(out, riff_size);
    append_tag(out, "WAVE");
    append_tag(out, "fmt ");
    append_u32(out, fmt_size);
    append_u16(out, format);
    append_u16(out, 1); // mono
    append_u32(out, rate);
    append_u32(out, rate * static_cast<std::uint32_t>(bytes_per_sample));
    append_u16(out, static_cast<std::uint16_t>(bytes_per_sample));
    append_u16(out, bits);
    if (is_float) {
        append_u16(out, 0); // cbSize
        append_tag(out, "fact");
        append_u32(out, 4);
        append_u32(out, static_cast<std::uint32_t>(frames));
    }
    append_tag(out, "data");
    append_u32(out, data_size);
    out.insert(out.end(), data.begin(), data.end());
    if (data_size & 1) out.push_back(0);

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) fail(path, "cannot open for writing");
    os.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!os) fail(path, "write failed");
    return clipped;
}

} // namespace passby
