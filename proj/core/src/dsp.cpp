#include "passby/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace passby {

double GaussianKernel::sum() const {
    return std::accumulate(taps.begin(), taps.end(), 0.0);
}

PressureSignal rectify(const PressureSignal& signal) {
    validate(signal);
    PressureSignal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.samples.resize(signal.samples.size());
    std::transform(signal.samples.begin(), signal.samples.end(), out.samples.begin(),
                   [](double s) { return std::abs(s); });
    return out;
}

GaussianKernel make_gaussian(double t_c_s, double sigma_s, double sample_rate_hz) {
    if (!(t_c_s > 0.0)) throw std::invalid_argument("make_gaussian: t_c_s must be positive");
    if (!(sigma_s > 0.0)) throw std::invalid_argument("make_gaussian: sigma_s must be positive");
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("make_gaussian: sample rate must be positive");

    const long long center = std::llround(t_c_s * sample_rate_hz);
    if (center < 1)
        throw std::invalid_argument("make_gaussian: kernel support shorter than one sample");

    GaussianKernel k;
    k.sample_rate_hz = sample_rate_hz;
    k.t_c_s = static_cast<double>(center) / sample_rate_hz;
    k.sigma_s = sigma_s;
    k.taps.resize(static_cast<std::size_t>(2 * center + 1));
    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma_s * sigma_s);
    for (long long i = -center; i <= center; ++i) {
        const double dt = static_cast<double>(i) / sample_rate_hz;
        k.taps[static_cast<std::size_t>(i + center)] = std::exp(-dt * dt * inv_two_sigma_sq);
    }
    return k;
}

std::vector<double> convolve_direct(std::span<const double> x, std::span<const double> g) {
    if (x.empty() || g.empty())
        throw std::invalid_argument("convolve_direct: empty input");
    const std::size_t m = x.size();
    const std::size_t n = g.size();
    std::vector<double> w(m + n - 1);
    for (std::size_t k = 0; k < w.size(); ++k) {
        const std::size_t j_lo = k >= n ? k - n + 1 : 0;
        const std::size_t j_hi = std::min(k, m - 1);
        double acc = 0.0;
        for (std::size_t j = j_lo; j <= j_hi; ++j)
            acc += x[j] * g[k - j];
        w[k] = acc;
    }
    return w;
}

namespace {

// Iterative radix-2 FFT. The twiddle table is filled with one cos/sin call per
// entry rather than by repeated multiplication, which keeps the roundoff flat
// across large transforms.
class Fft {
public:
    explicit Fft(std::size_t n) : n_(n), twiddle_(n / 2) {
        const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
        for (std::size_t i = 0; i < n / 2; ++i)
            twiddle_[i] = {std::cos(step * static_cast<double>(i)),
                           std::sin(step * static_cast<double>(i))};
    }

    void forward(std::vector<std::complex<double>>& a) const { run(a, false); }
    void inverse(std::vector<std::complex<double>>& a) const {
        run(a, true);
        const double inv = 1.0 / static_cast<double>(n_);
        for (auto& v : a) v *= inv;
    }

private:
    void run(std::vector<std::complex<double>>& a, bool invert) const {
        const std::size_t n = n_;
        for (std::size_t i = 1, j = 0; i < n; ++i) {
            std::size_t bit = n >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t stride = n / len;
            for (std::size_t i = 0; i < n; i += len) {
                for (std::size_t k = 0; k < len / 2; ++k) {
                    std::complex<double> w = twiddle_[k * stride];
                    if (invert) w = std::conj(w);
                    const std::complex<double> u = a[i + k];
                    const std::complex<double> v = a[i + k + len / 2] * w;
                    a[i + k] = u + v;
                    a[i + k + len / 2] = u - v;
                }
            }
        }
    }

    std::size_t n_;
    std::vector<std::complex<double>> twiddle_;
};

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

} // namespace

std::vector<double> convolve_fast(std::span<const double> x, std::span<const double> g) {
    if (x.empty() || g.empty())
        throw std::invalid_argument("convolve_fast: empty input");
    const std::size_t m = x.size();
    const std::size_t n = g.size();

    // Overlap-add with a partition size that depends only on the kernel
    // length, so the result for a given kernel is reproducible regardless of
    // how long the signal is.
    const std::size_t fft_n = next_pow2(std::max<std::size_t>(256, 2 * n));
    const std::size_t block = fft_n - (n - 1);
    const Fft fft(fft_n);

    std::vector<std::complex<double>> g_spec(fft_n);
    for (std::size_t i = 0; i < n; ++i) g_spec[i] = g[i];
    fft.forward(g_spec);

    std::vector<double> w(m + n - 1, 0.0);
    std::vector<std::complex<double>> buf(fft_n);
    for (std::size_t start = 0; start < m; start += block) {
        const std::size_t len = std::min(block, m - start);
        std::fill(buf.begin(), buf.end(), std::complex<double>{});
        for (std::size_t i = 0; i < len; ++i) buf[i] = x[start + i];
        fft.forward(buf);
        for (std::size_t i = 0; i < fft_n; ++i) buf[i] *= g_spec[i];
        fft.inverse(buf);
        const std::size_t out_len = std::min(len + n - 1, w.size() - start);
        for (std::size_t i = 0; i < out_len; ++i)
            w[start + i] += buf[i].real();
    }
    return w;
}

namespace {

DerivedSignal convolved_signal(std::vector<double> values, const DerivedSignal& x,
                               const GaussianKernel& g) {
    if (x.sample_rate_hz != g.sample_rate_hz)
        throw std::invalid_argument("convolve: signal and kernel sample rates differ");
    DerivedSignal out;
    out.values = std::move(values);
    out.sample_rate_hz = x.sample_rate_hz;
    out.time_offset_s = x.time_offset_s - g.t_c_s;
    return out;
}

} // namespace

DerivedSignal convolve_direct(const DerivedSignal& x, const GaussianKernel& g) {
    return convolved_signal(convolve_direct(std::span(x.values), std::span(g.taps)), x, g);
}

DerivedSignal convolve_fast(const DerivedSignal& x, const GaussianKernel& g) {
    return convolved_signal(convolve_fast(std::span(x.values), std::span(g.taps)), x, g);
}

PressureSignal decimate(const PressureSignal& signal, std::size_t factor) {
    validate(signal);
    if (factor == 0) throw std::invalid_argument("decimate: factor must be positive");
    if (factor == 1) return signal;

    PressureSignal out;
    out.sample_rate_hz = signal.sample_rate_hz / static_cast<double>(factor);
    const std::size_t full = signal.samples.size() / factor;
    const std::size_t rem = signal.samples.size() % factor;
    out.samples.reserve(full + (rem ? 1 : 0));
    for (std::size_t b = 0; b < full; ++b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < factor; ++i)
            acc += signal.samples[b * factor + i];
        out.samples.push_back(acc / static_cast<double>(factor));
    }
    if (rem) {
        double acc = 0.0;
        for (std::size_t i = signal.samples.size() - rem; i < signal.samples.size(); ++i)
            acc += signal.samples[i];
        out.samples.push_back(acc / static_cast<double>(rem));
    }
    return out;
}

DerivedSignal derivative(const DerivedSignal& x) {
    if (x.values.size() < 2)
        throw std::invalid_argument("derivative: need at least two samples");
    if (!(x.sample_rate_hz > 0.0))
        throw std::invalid_argument("derivative: sample rate must be positive");
    DerivedSignal out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.time_offset_s = x.time_offset_s;
    out.values.resize(x.values.size() - 1);
    for (std::size_t i = 0; i + 1 < x.values.size(); ++i)
        out.values[i] = (x.values[i + 1] - x.values[i]) * x.sample_rate_hz;
    return out;
}

} // namespace passby
