#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace shmbench {

namespace detail {
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace detail

/// Real-to-complex FFT of fixed length. Plan creation is serialized (the
/// FFTW planner is not thread safe); execution on the instance's own buffers
/// is, so give each worker thread its own instance.
class RealFft {
public:
    explicit RealFft(std::size_t n) : n_(n) {
        if (n < 2) throw std::invalid_argument("RealFft: length must be >= 2");
        in_ = fftw_alloc_real(n);
        out_ = fftw_alloc_complex(n / 2 + 1);
        if (!in_ || !out_) throw std::bad_alloc();
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
        if (!plan_) throw std::runtime_error("RealFft: planner failed");
    }

    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    ~RealFft() {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }

    std::size_t size() const { return n_; }

    /// Spectrum bins 0..n/2 of the input (zero-padded or truncated to n).
    std::vector<std::complex<double>> forward(std::span<const double> x) {
        const std::size_t copy = std::min(x.size(), n_);
        for (std::size_t i = 0; i < copy; ++i) in_[i] = x[i];
        for (std::size_t i = copy; i < n_; ++i) in_[i] = 0.0;
        fftw_execute(plan_);
        std::vector<std::complex<double>> spec(n_ / 2 + 1);
        for (std::size_t k = 0; k < spec.size(); ++k) spec[k] = {out_[k][0], out_[k][1]};
        return spec;
    }

private:
    std::size_t n_;
    double* in_;
    fftw_complex* out_;
    fftw_plan plan_;
};

struct PsdResult {
    std::vector<double> frequency_hz;
    std::vector<double> power;  // one-sided, (signal unit)^2 / Hz
    double resolution_hz = 0.0;
};

/// Welch estimate with a single full-length Hann-windowed segment, which
/// keeps the full fs/n frequency resolution of the record.
inline PsdResult welch_psd(std::span<const double> x, double sample_rate_hz, RealFft* fft = nullptr) {
    const std::size_t n = x.size();
    if (n < 16) throw std::invalid_argument("welch_psd: signal too short");
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("welch_psd: bad sample rate");

    std::vector<double> windowed(n);
    double window_power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / static_cast<double>(n - 1)));
        if (!std::isfinite(x[i])) throw std::domain_error("welch_psd: non-finite sample");
        windowed[i] = x[i] * w;
        window_power += w * w;
    }

    std::unique_ptr<RealFft> local;
    RealFft* engine = fft && fft->size() == n ? fft : (local = std::make_unique<RealFft>(n)).get();
    const auto spec = engine->forward(windowed);

    PsdResult out;
    out.resolution_hz = sample_rate_hz / static_cast<double>(n);
    out.frequency_hz.resize(spec.size());
    out.power.resize(spec.size());
    const double scale = 1.0 / (sample_rate_hz * window_power);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        out.frequency_hz[k] = out.resolution_hz * static_cast<double>(k);
        const double mag2 = std::norm(spec[k]);
        const bool interior = k != 0 && k != spec.size() - 1;
        out.power[k] = (interior ? 2.0 : 1.0) * scale * mag2;
    }
    return out;
}

/// Frequency of the PSD peak restricted to [f_lo, f_hi].
inline double dominant_frequency_hz(std::span<const double> x, double sample_rate_hz, double f_lo_hz,
                                    double f_hi_hz, RealFft* fft = nullptr) {
    if (!(0.0 <= f_lo_hz && f_lo_hz < f_hi_hz))
        throw std::invalid_argument("dominant_frequency: bad search band");
    double peak = 0.0;
    for (const double v : x) {
        if (!std::isfinite(v)) throw std::domain_error("dominant_frequency: non-finite sample");
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) throw std::domain_error("dominant_frequency: all-zero signal");

    const PsdResult psd = welch_psd(x, sample_rate_hz, fft);
    double best_f = -1.0;
    double best_p = -1.0;
    for (std::size_t k = 0; k < psd.frequency_hz.size(); ++k) {
        const double f = psd.frequency_hz[k];
        if (f < f_lo_hz || f > f_hi_hz) continue;
        if (psd.power[k] > best_p) {
            best_p = psd.power[k];
            best_f = f;
        }
    }
    if (best_f < 0.0) throw std::invalid_argument("dominant_frequency: empty search band");
    return best_f;
}

inline std::vector<double> to_double(std::span<const float> x) {
    return std::vector<double>(x.begin(), x.end());
}

}  // namespace shmbench
