#pragma once

#include <cstddef>
#include <filesystem>

#include "passby/signal.hpp"

namespace passby {

enum class WavBitDepth { pcm16, pcm24, float32 };

/// Reads a RIFF/WAVE file holding PCM 16/24-bit or IEEE float32 samples.
/// Integer samples are scaled to [-1, 1) by 2^(bits-1); multi-channel input
/// is downmixed to mono by the arithmetic mean of the channels. Anything
/// that is not PCM or IEEE float is rejected with a message naming the
/// codec.
PressureSignal read_wav(const std::filesystem::path& path);

/// Writes a mono WAV file at the requested depth. Samples outside [-1, 1]
/// are clipped to the range first; the return value is the number of
/// clipped samples (0 for an in-range signal). Reading the file back
/// reproduces every in-range sample within one quantization step of the
/// chosen depth.
std::size_t write_wav(const PressureSignal& signal,
                      const std::filesystem::path& path,
                      WavBitDepth depth);

} // namespace passby
