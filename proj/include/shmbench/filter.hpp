#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace shmbench {

/// Second-order IIR section, direct form II transposed coefficients
/// normalized to a0 = 1.
struct Biquad {
    double b0, b1, b2;
    double a1, a2;
};

/// Butterworth band-pass design via the analog prototype, the
/// lowpass-to-bandpass transform, and the bilinear map with frequency
/// prewarping. `order` is the prototype order, so the resulting filter has
/// 2*order poles arranged into `order` biquad sections.
inline std::vector<Biquad> butterworth_bandpass(int order, double f_lo_hz, double f_hi_hz,
                                                double sample_rate_hz) {
    if (order < 1 || order > 12) throw std::invalid_argument("butterworth_bandpass: order out of range");
    if (!(0.0 < f_lo_hz && f_lo_hz < f_hi_hz && f_hi_hz < 0.5 * sample_rate_hz))
        throw std::invalid_argument("butterworth_bandpass: need 0 < f_lo < f_hi < Nyquist");

    using cplx = std::complex<double>;
    const double fs2 = 2.0 * sample_rate_hz;
    const double w_lo = fs2 * std::tan(M_PI * f_lo_hz / sample_rate_hz);
    const double w_hi = fs2 * std::tan(M_PI * f_hi_hz / sample_rate_hz);
    const double w0 = std::sqrt(w_lo * w_hi);
    const double bw = w_hi - w_lo;

    const auto bilinear = [fs2](cplx s) { return (fs2 + s) / (fs2 - s); };

    // z-domain pole pairs, one biquad denominator per entry
    std::vector<std::pair<cplx, cplx>> pole_pairs;
    for (int k = 1; k <= order; ++k) {
        const double theta = M_PI * (2.0 * k + order - 1.0) / (2.0 * order);
        const cplx proto{std::cos(theta), std::sin(theta)};
        if (proto.imag() < -1e-12) continue;  // conjugates are implied

        // s^2 - proto*bw*s + w0^2 = 0
        const cplx a = 0.5 * proto * bw;
        const cplx root = std::sqrt(a * a - cplx{w0 * w0, 0.0});
        const cplx s1 = a + root;
        const cplx s2 = a - root;

        if (std::abs(proto.imag()) <= 1e-12) {
            // real prototype pole (odd order): s1, s2 form one section
            pole_pairs.emplace_back(bilinear(s1), bilinear(s2));
        } else {
            pole_pairs.emplace_back(bilinear(s1), std::conj(bilinear(s1)));
            pole_pairs.emplace_back(bilinear(s2), std::conj(bilinear(s2)));
        }
    }

    std::vector<Biquad> sections;
    sections.reserve(pole_pairs.size());
    for (const auto& [p1, p2] : pole_pairs) {
        Biquad s{};
        // numerator (1 - z^-2): one zero at z=1, one at z=-1 per section
        s.b0 = 1.0;
        s.b1 = 0.0;
        s.b2 = -1.0;
        s.a1 = -(p1 + p2).real();
        s.a2 = (p1 * p2).real();
        sections.push_back(s);
    }

    // normalize to unit gain at the (warped) center frequency
    const double omega_c = 2.0 * std::atan(w0 / fs2);
    const cplx zc = std::polar(1.0, omega_c);
    const cplx zc1 = 1.0 / zc;
    const cplx zc2 = zc1 * zc1;
    cplx h{1.0, 0.0};
    for (const Biquad& s : sections)
        h *= (s.b0 + s.b1 * zc1 + s.b2 * zc2) / (1.0 + s.a1 * zc1 + s.a2 * zc2);
    const double gain = std::abs(h);
    if (!(gain > 0.0)) throw std::runtime_error("butterworth_bandpass: degenerate design");
    sections.front().b0 /= gain;
    sections.front().b1 /= gain;
    sections.front().b2 /= gain;
    return sections;
}

/// Single forward pass of the biquad cascade from zero state.
inline void sos_filter_inplace(std::vector<double>& x, const std::vector<Biquad>& sections) {
    for (const Biquad& s : sections) {
        double z1 = 0.0, z2 = 0.0;
        for (double& v : x) {
            const double in = v;
            const double out = s.b0 * in + z1;
            z1 = s.b1 * in - s.a1 * out + z2;
            z2 = s.b2 * in - s.a2 * out;
            v = out;
        }
    }
}

/// Forward-backward (zero-phase) filtering with odd-reflection padding at
/// both ends to suppress the start-up transients.
inline std::vector<double> filtfilt(const std::vector<double>& x, const std::vector<Biquad>& sections,
                                    std::size_t pad = 500) {
    if (x.empty()) return {};
    pad = std::min(pad, x.size() - 1);

    std::vector<double> work;
    work.reserve(x.size() + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) work.push_back(2.0 * x.front() - x[i]);
    work.insert(work.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) work.push_back(2.0 * x.back() - x[x.size() - 1 - i]);

    sos_filter_inplace(work, sections);
    std::reverse(work.begin(), work.end());
    sos_filter_inplace(work, sections);
    std::reverse(work.begin(), work.end());

    return std::vector<double>(work.begin() + static_cast<long>(pad),
                               work.begin() + static_cast<long>(pad + x.size()));
}

inline std::vector<double> bandpass_filtfilt(const std::vector<double>& x, double f_lo_hz, double f_hi_hz,
                                             double sample_rate_hz, int order = 4) {
    return filtfilt(x, butterworth_bandpass(order, f_lo_hz, f_hi_hz, sample_rate_hz));
}

}  // namespace shmbench
