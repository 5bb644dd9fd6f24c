#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shmbench/filter.hpp"
#include "shmbench/rng.hpp"
#include "shmbench/structure.hpp"
#include "shmbench/welch.hpp"

namespace shmbench {

/// Ambient-vibration synthesis and acquisition acceptance settings.
struct ExcitationParams {
    double sample_rate_hz = 100.0;
    double duration_s = 180.0;

    double human_band_lo_hz = 1.2;
    double human_band_hi_hz = 4.8;
    double human_sigma_lo = 5e-6;  // m/s^2
    double human_sigma_hi = 5e-4;

    double traffic_band_lo_hz = 7.0;
    double traffic_band_hi_hz = 15.0;
    double traffic_sigma_lo = 1e-6;
    double traffic_sigma_hi = 2e-4;

    int filter_order = 4;
    double target_resolution_hz = 0.0056;

    double search_band_lo_hz = 0.5;
    double search_band_hi_hz = 20.0;

    /// Leading seconds simulated and discarded so the start-up transient
    /// never reaches the stored record.
    double warmup_s = 5.0;

    double frequency_tolerance = 0.01;
    int max_attempts = 10;

    /// Measurement-noise channel (omega_M): force WGN on the state equation;
    /// off by default.
    bool measurement_noise = false;
    double measurement_noise_std_n = 0.0;

    double dt_s() const { return 1.0 / sample_rate_hz; }
    std::size_t n_samples() const {
        return static_cast<std::size_t>(std::llround(sample_rate_hz * duration_s));
    }
    std::size_t warmup_samples() const {
        return static_cast<std::size_t>(std::llround(sample_rate_hz * warmup_s));
    }

    void validate() const {
        if (!(sample_rate_hz > 0.0) || !(duration_s > 0.0))
            throw std::invalid_argument("ExcitationParams: sampling setup must be positive");
        if (!(0.0 < human_band_lo_hz && human_band_lo_hz < human_band_hi_hz &&
              human_band_hi_hz <= traffic_band_lo_hz && traffic_band_lo_hz < traffic_band_hi_hz &&
              traffic_band_hi_hz < 0.5 * sample_rate_hz))
            throw std::invalid_argument("ExcitationParams: bands must be ordered and non-overlapping");
        if (human_sigma_lo < 0.0 || human_sigma_hi < human_sigma_lo || traffic_sigma_lo < 0.0 ||
            traffic_sigma_hi < traffic_sigma_lo)
            throw std::invalid_argument("ExcitationParams: sigma ranges must be non-negative");
        if (max_attempts < 1) throw std::invalid_argument("ExcitationParams: max_attempts must be >= 1");
    }

    bool operator==(const ExcitationParams&) const = default;
};

/// Per-acquisition input amplitudes, frozen across the retry loop.
struct SigmaDraw {
    double human = 0.0;
    double traffic = 0.0;
};

inline SigmaDraw draw_sigmas(const ExcitationParams& p, rng::Generator& gen) {
    SigmaDraw s;
    s.human = gen.uniform(p.human_sigma_lo, p.human_sigma_hi);
    s.traffic = gen.uniform(p.traffic_sigma_lo, p.traffic_sigma_hi);
    return s;
}

/// The sigma pair belonging to acquisition `index` under `master_seed`.
inline SigmaDraw sigmas_for(const ExcitationParams& p, std::uint64_t master_seed, std::size_t index) {
    rng::Generator gen(rng::derive_seed(master_seed, rng::Stream::sigma_draw, index));
    return draw_sigmas(p, gen);
}

/// Superposition of two band-limited Gaussian processes (human activity and
/// traffic): white sequences with the drawn standard deviations, band-pass
/// filtered to their bands and summed. Units m/s^2 of base excitation.
inline std::vector<double> colored_input(const ExcitationParams& p, const SigmaDraw& sigma,
                                         std::uint64_t noise_seed, std::size_t n_total) {
    p.validate();
    rng::Generator gen(noise_seed);
    std::vector<double> human(n_total);
    std::vector<double> traffic(n_total);
    for (std::size_t i = 0; i < n_total; ++i) human[i] = gen.normal(0.0, sigma.human);
    for (std::size_t i = 0; i < n_total; ++i) traffic[i] = gen.normal(0.0, sigma.traffic);

    if (sigma.human > 0.0)
        human = bandpass_filtfilt(human, p.human_band_lo_hz, p.human_band_hi_hz, p.sample_rate_hz,
                                  p.filter_order);
    if (sigma.traffic > 0.0)
        traffic = bandpass_filtfilt(traffic, p.traffic_band_lo_hz, p.traffic_band_hi_hz,
                                    p.sample_rate_hz, p.filter_order);

    for (std::size_t i = 0; i < n_total; ++i) human[i] += traffic[i];
    return human;
}

/// Standalone form: amplitudes drawn from the seed itself.
inline std::vector<double> colored_input(const ExcitationParams& p, std::uint64_t seed) {
    rng::Generator sigma_gen(rng::derive_seed(seed, rng::Stream::sigma_draw));
    const SigmaDraw sigma = draw_sigmas(p, sigma_gen);
    return colored_input(p, sigma, rng::derive_seed(seed, rng::Stream::excitation), p.n_samples());
}

/// Zero-order-hold exact discretization of the SDOF state equation
///   x' = [0 1; -k/m -c/m] x + [0; 1] u
/// over a fixed step; u is the base-excitation acceleration input.
struct SdofDiscrete {
    double ad11, ad12, ad21, ad22;
    double bd1, bd2;
    double k_over_m, c_over_m;
};

inline SdofDiscrete discretize_sdof(double k_n_m, double m_kg, double c_ns_m, double dt_s) {
    if (!(k_n_m > 0.0) || !(m_kg > 0.0) || !(c_ns_m >= 0.0) || !(dt_s > 0.0))
        throw std::invalid_argument("discretize_sdof: invalid parameters");
    const double a = k_n_m / m_kg;
    const double b = c_ns_m / m_kg;
    const double sigma = 0.5 * b;
    const double disc = a - sigma * sigma;

    double cosl, sinl_over_w;  // cos-like and sin-like/omega terms
    if (disc > 1e-12 * a) {
        const double wd = std::sqrt(disc);
        cosl = std::cos(wd * dt_s);
        sinl_over_w = std::sin(wd * dt_s) / wd;
    } else if (disc < -1e-12 * a) {
        const double wd = std::sqrt(-disc);
        cosl = std::cosh(wd * dt_s);
        sinl_over_w = std::sinh(wd * dt_s) / wd;
    } else {  // critically damped
        cosl = 1.0;
        sinl_over_w = dt_s;
    }
    const double decay = std::exp(-sigma * dt_s);

    SdofDiscrete d{};
    d.k_over_m = a;
    d.c_over_m = b;
    d.ad11 = decay * (cosl + sigma * sinl_over_w);
    d.ad12 = decay * sinl_over_w;
    d.ad21 = decay * (-a * sinl_over_w);
    d.ad22 = decay * (cosl - sigma * sinl_over_w);
    // Bd = A^-1 (Ad - I) B with B = [0, 1]^T and A^-1 = [-b/a, -1/a; 1, 0]
    d.bd1 = (-b * d.ad12 - (d.ad22 - 1.0)) / a;
    d.bd2 = d.ad12;
    return d;
}

struct SdofResponse {
    std::vector<double> displacement_m;
    std::vector<double> acceleration_m_s2;  // absolute acceleration of the mass
};

/// Integrates the state equation sample by sample; throws if the state goes
/// non-finite.
inline SdofResponse simulate_sdof(double k_n_m, double m_kg, double c_ns_m,
                                  std::span<const double> input_m_s2, double dt_s,
                                  bool measurement_noise = false, double noise_std_n = 0.0,
                                  std::uint64_t noise_seed = 0) {
    const SdofDiscrete d = discretize_sdof(k_n_m, m_kg, c_ns_m, dt_s);
    rng::Generator noise_gen(noise_seed);

    SdofResponse out;
    out.displacement_m.resize(input_m_s2.size());
    out.acceleration_m_s2.resize(input_m_s2.size());
    double x1 = 0.0, x2 = 0.0;
    for (std::size_t i = 0; i < input_m_s2.size(); ++i) {
        double u = input_m_s2[i];
        if (measurement_noise && noise_std_n > 0.0) u += noise_gen.normal(0.0, noise_std_n) / m_kg;
        out.displacement_m[i] = x1;
        out.acceleration_m_s2[i] = -d.k_over_m * x1 - d.c_over_m * x2 + u;
        const double nx1 = d.ad11 * x1 + d.ad12 * x2 + d.bd1 * u;
        const double nx2 = d.ad21 * x1 + d.ad22 * x2 + d.bd2 * u;
        x1 = nx1;
        x2 = nx2;
        if (!std::isfinite(x1) || !std::isfinite(x2))
            throw std::runtime_error("simulate_sdof: state diverged at sample " + std::to_string(i));
    }
    return out;
}

/// One stored acquisition plus its acceptance diagnostics.
struct AccelerationRecord {
    std::vector<float> samples;  // n_samples at 32-bit storage precision
    std::size_t index = 0;
    int attempts_used = 0;
    double extracted_hz = 0.0;
    double analytical_hz = 0.0;
    bool accepted = false;
    SigmaDraw sigmas{};
};

/// Simulate-check-retry loop: up to max_attempts simulations with fresh
/// input noise (same sigma draw); the first whose extracted dominant
/// frequency is within tolerance of the analytical one is accepted,
/// otherwise the closest candidate is kept with accepted = false.
inline AccelerationRecord generate_acquisition(const SdofParams& sdof, const ExcitationParams& p,
                                               const SigmaDraw& sigma, std::uint64_t seed,
                                               RealFft* fft = nullptr) {
    p.validate();
    const std::size_t n = p.n_samples();
    const std::size_t warmup = p.warmup_samples();

    AccelerationRecord best;
    best.analytical_hz = sdof.f_n_hz;
    best.sigmas = sigma;
    double best_err = std::numeric_limits<double>::infinity();

    for (int attempt = 1; attempt <= p.max_attempts; ++attempt) {
        const std::uint64_t noise_seed =
            rng::derive_seed(seed, rng::Stream::excitation, static_cast<std::uint64_t>(attempt));
        const auto input = colored_input(p, sigma, noise_seed, n + warmup);
        const auto resp = simulate_sdof(sdof.k_n_m, sdof.m_kg, sdof.c_ns_m, input, p.dt_s(),
                                        p.measurement_noise, p.measurement_noise_std_n,
                                        rng::derive_seed(noise_seed, rng::Stream::excitation, 0xEF));
        const std::span<const double> kept(resp.acceleration_m_s2.data() + warmup, n);
        const double f_extr =
            dominant_frequency_hz(kept, p.sample_rate_hz, p.search_band_lo_hz, p.search_band_hi_hz, fft);
        const double err = std::abs(f_extr / sdof.f_n_hz - 1.0);

        if (err < best_err) {
            best_err = err;
            best.samples.assign(kept.begin(), kept.end());
            best.extracted_hz = f_extr;
            best.attempts_used = attempt;
        }
        if (err <= p.frequency_tolerance) {
            best.accepted = true;
            best.attempts_used = attempt;
            break;
        }
    }
    return best;
}

/// Spec-signature overload: sigma pair derived from the seed.
inline AccelerationRecord generate_acquisition(double k_n_m, double m_kg, double zeta,
                                               const ExcitationParams& p, std::uint64_t seed) {
    rng::Generator sigma_gen(rng::derive_seed(seed, rng::Stream::sigma_draw));
    return generate_acquisition(make_sdof(k_n_m, m_kg, zeta), p, draw_sigmas(p, sigma_gen), seed);
}

}  // namespace shmbench
