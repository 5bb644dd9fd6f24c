#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace shmbench::rng {

/// Finalizing mix of splitmix64; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Named sub-streams hanging off the master seed. Values are part of the
/// reproducibility contract: changing them changes every generated corpus.
enum class Stream : std::uint64_t {
    environment = 0x45,
    sustained_load = 0x4c31,
    intermittent_load = 0x4c32,
    sigma_draw = 0x53,
    excitation = 0x58,
    fault_plan = 0x4650,
    fault_params = 0x4651,
    subset_sample = 0x5353,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) noexcept {
    std::uint64_t s = mix64(master);
    s = mix64(s ^ static_cast<std::uint64_t>(stream));
    s = mix64(s ^ a);
    s = mix64(s ^ b);
    return s;
}

/// Deterministic sampler on top of std::mt19937_64. The engine's output
/// sequence is pinned by the standard; the distribution transforms below are
/// spelled out by hand so results do not depend on the standard library's
/// distribution implementations.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_index: n must be > 0");
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    long uniform_int(long lo, long hi) {
        if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
        return lo + static_cast<long>(uniform_index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Standard normal via Box-Muller; draws are produced in pairs.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Exponential with the given mean (not rate).
    double exponential(double mean) {
        if (!(mean > 0.0)) throw std::invalid_argument("exponential: mean must be > 0");
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return -mean * std::log(u);
    }

    /// Gamma(shape, rate) by Marsaglia-Tsang squeeze; shape < 1 boosted via
    /// the u^(1/shape) identity.
    double gamma(double shape, double rate) {
        if (!(shape > 0.0) || !(rate > 0.0))
            throw std::invalid_argument("gamma: shape and rate must be > 0");
        if (shape < 1.0) {
            const double boosted = gamma(shape + 1.0, rate);
            double u = uniform();
            while (u <= 0.0) u = uniform();
            return boosted * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
            if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
                return d * v / rate;
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace shmbench::rng
