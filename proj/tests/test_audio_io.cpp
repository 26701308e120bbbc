#include <doctest.h>

#include "passby/audio_io.hpp"

#include "test_util.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

using namespace passby;
using testutil::TempDir;

namespace {

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
    put_u16(out, static_cast<std::uint16_t>(v & 0xFFFF));
    put_u16(out, static_cast<std::uint16_t>(v >> 16));
}

// Minimal PCM WAV: 16-bit unless bits says otherwise, data passed raw.
std::string wav_bytes(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                      std::uint16_t bits, const std::string& data) {
    std::string out;
    out += "RIFF";
    put_u32(out, 36 + static_cast<std::uint32_t>(data.size()));
    out += "WAVE";
    out += "fmt ";
    put_u32(out, 16);
    put_u16(out, format);
    put_u16(out, channels);
    put_u32(out, rate);
    put_u32(out, rate * channels * bits / 8);
    put_u16(out, static_cast<std::uint16_t>(channels * bits / 8));
    put_u16(out, bits);
    out += "data";
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    out += data;
    return out;
}

std::string pcm16(std::initializer_list<std::int16_t> samples) {
    std::string data;
    for (std::int16_t s : samples)
        put_u16(data, static_cast<std::uint16_t>(s));
    return data;
}

} // namespace

TEST_CASE("16-bit samples scale by 2^15") {
    TempDir tmp;
    const auto path = tmp.file("mono16.wav");
    testutil::write_file(path, wav_bytes(1, 1, 8000, 16, pcm16({0, -32768})));

    const PressureSignal s = read_wav(path);
    CHECK(s.sample_rate_hz == 8000.0);
    REQUIRE(s.samples.size() == 2);
    CHECK(s.samples[0] == 0.0);
    CHECK(s.samples[1] == -1.0);
}

TEST_CASE("stereo frames downmix to the channel mean") {
    TempDir tmp;
    const auto path = tmp.file("stereo.wav");
    // one frame: (0.5, -0.5) as 16-bit values 16384, -16384
    testutil::write_file(path, wav_bytes(1, 2, 44100, 16, pcm16({16384, -16384})));

    const PressureSignal s = read_wav(path);
    REQUIRE(s.samples.size() == 1);
    CHECK(s.samples[0] == 0.0);

    // mean downmix does not care about channel order
    const auto swapped = tmp.file("swapped.wav");
    testutil::write_file(swapped, wav_bytes(1, 2, 44100, 16, pcm16({-16384, 16384})));
    CHECK(read_wav(swapped).samples[0] == 0.0);
}

TEST_CASE("24-bit full scale reads as just under 1.0") {
    TempDir tmp;
    const auto path = tmp.file("mono24.wav");
    std::string data;
    data.push_back(static_cast<char>(0xFF));
    data.push_back(static_cast<char>(0xFF));
    data.push_back(static_cast<char>(0x7F)); // 2^23 - 1
    testutil::write_file(path, wav_bytes(1, 1, 48000, 24, data));

    const PressureSignal s = read_wav(path);
    CHECK(s.sample_rate_hz == 48000.0);
    REQUIRE(s.samples.size() == 1);
    CHECK(s.samples[0] == doctest::Approx(0.99999988).epsilon(1e-9));
}

TEST_CASE("float32 write/read round-trips exactly") {
    TempDir tmp;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    PressureSignal s{{}, 48000.0};
    s.samples.resize(1000);
    for (double& x : s.samples)
        x = static_cast<double>(static_cast<float>(dist(rng))); // float-representable

    const auto path = tmp.file("f32.wav");
    CHECK(write_wav(s, path, WavBitDepth::float32) == 0);
    const PressureSignal back = read_wav(path);
    CHECK(back.sample_rate_hz == s.sample_rate_hz);
    CHECK(back.samples == s.samples);
}

TEST_CASE("integer depths round-trip within one quantization step") {
    TempDir tmp;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    PressureSignal s{{0.5, -0.25, 0.0}, 44100.0};
    for (int i = 0; i < 1000; ++i)
        s.samples.push_back(dist(rng));

    struct Case { WavBitDepth depth; const char* name; double lsb; };
    for (const Case c : {Case{WavBitDepth::pcm16, "w16.wav", 1.0 / 32768.0},
                         Case{WavBitDepth::pcm24, "w24.wav", 1.0 / 8388608.0}}) {
        const auto path = tmp.file(c.name);
        CHECK(write_wav(s, path, c.depth) == 0);
        const PressureSignal back = read_wav(path);
        REQUIRE(back.samples.size() == s.samples.size());
        for (std::size_t i = 0; i < s.samples.size(); ++i)
            CHECK(std::abs(back.samples[i] - s.samples[i]) <= c.lsb);
    }
}

TEST_CASE("out-of-range samples are clipped and counted") {
    TempDir tmp;
    const PressureSignal s{{1.5, 0.0, -2.0, 0.25}, 8000.0};
    const auto path = tmp.file("clip.wav");
    CHECK(write_wav(s, path, WavBitDepth::float32) == 2);

    const PressureSignal back = read_wav(path);
    CHECK(back.samples[0] == 1.0);
    CHECK(back.samples[2] == -1.0);
    CHECK(back.samples[3] == 0.25);

    // clipping at 16 bits still lands within one step of full scale
    const auto path16 = tmp.file("clip16.wav");
    CHECK(write_wav(s, path16, WavBitDepth::pcm16) == 2);
    CHECK(std::abs(read_wav(path16).samples[0] - 1.0) <= 1.0 / 32768.0);
}

TEST_CASE("rejected and broken files raise errors") {
    TempDir tmp;

    CHECK_THROWS_AS(read_wav(tmp.file("missing.wav")), std::runtime_error);

    const auto garbage = tmp.file("garbage.wav");
    testutil::write_file(garbage, "this is not a wav file at all");
    CHECK_THROWS_AS(read_wav(garbage), std::runtime_error);

    const auto truncated = tmp.file("truncated.wav");
    std::string bytes = wav_bytes(1, 1, 8000, 16, pcm16({1, 2, 3, 4}));
    bytes.resize(bytes.size() - 5);
    testutil::write_file(truncated, bytes);
    CHECK_THROWS_AS(read_wav(truncated), std::runtime_error);

    const auto empty_data = tmp.file("empty.wav");
    testutil::write_file(empty_data, wav_bytes(1, 1, 8000, 16, ""));
    CHECK_THROWS_AS(read_wav(empty_data), std::runtime_error);
}

TEST_CASE("unsupported codecs are named in the error") {
    TempDir tmp;
    struct Case { std::uint16_t format; const char* name; };
    for (const Case c : {Case{0x0007, "mu-law"}, Case{0x0055, "MPEG layer 3"},
                         Case{0x0031, "format code 49"}}) {
        const auto path = tmp.file("codec.wav");
        testutil::write_file(path, wav_bytes(c.format, 1, 8000, 16, pcm16({0, 0})));
        try {
            read_wav(path);
            FAIL("expected a codec rejection");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(c.name) != std::string::npos);
        }
    }
}
