#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "passby/signal.hpp"

namespace passby {

/// Sampled Gaussian window g[i] = exp(-(t_i - t_c)^2 / (2 sigma^2)) with
/// t_i = i / Fs, supported on [0, 2 t_c]. The peak tap is exactly 1.0 (the
/// kernel is peak-normalized, not area-normalized), so convolving with it
/// scales a locally constant signal by sum().
struct GaussianKernel {
    std::vector<double> taps;
    double sample_rate_hz = 0.0;
    double t_c_s = 0.0;   ///< center time, snapped to the sample grid
    double sigma_s = 0.0;

    std::size_t size() const { return taps.size(); }

    /// Total kernel gain; thresholds on smoothed signals scale by this.
    double sum() const;
};

/// Elementwise absolute value; the amplitude envelope's raw material.
PressureSignal rectify(const PressureSignal& signal);

/// Builds the smoothing kernel. The center index is round(t_c * Fs), the
/// tap count 2 * round(t_c * Fs) + 1, so taps are exactly symmetric about
/// the center and the center tap is exactly 1.0.
GaussianKernel make_gaussian(double t_c_s, double sigma_s, double sample_rate_hz);

/// Full linear convolution, output length m + n - 1. Reference
/// implementation: a direct double loop, summing in ascending signal index
/// order for every output sample.
std::vector<double> convolve_direct(std::span<const double> x, std::span<const double> g);

/// Same contract as convolve_direct, computed by FFT overlap-add. The
/// partition size is a fixed function of the kernel length, so output is
/// bit-identical across runs. Maximum absolute deviation from
/// convolve_direct is below 1e-9 * (kernel tap count) * max|x|.
std::vector<double> convolve_fast(std::span<const double> x, std::span<const double> g);

/// Typed convolution: the output keeps the signal's rate and its time axis
/// is re-centered by -t_c so the kernel's group delay does not shift
/// detected features against the recording.
DerivedSignal convolve_direct(const DerivedSignal& signal, const GaussianKernel& kernel);
DerivedSignal convolve_fast(const DerivedSignal& signal, const GaussianKernel& kernel);

/// Block-mean downsampling: output[i] is the mean of input samples
/// [i*factor, (i+1)*factor); a trailing partial block is averaged over its
/// actual length. The sample rate divides by factor. Intended for the
/// rectified envelope, which is low-frequency.
PressureSignal decimate(const PressureSignal& signal, std::size_t factor);

/// Forward difference (x[i+1] - x[i]) / h with h = 1 / Fs, using the
/// signal's own (possibly decimated) rate. Output is one sample shorter;
/// applying it twice gives the second forward difference.
DerivedSignal derivative(const DerivedSignal& signal);

} // namespace passby
