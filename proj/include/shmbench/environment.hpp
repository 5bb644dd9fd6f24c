#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shmbench/rng.hpp"
#include "shmbench/time_grid.hpp"

namespace shmbench {

/// Seasonal + diurnal sinusoids with an AR(1) residual; relative humidity is
/// generated anticorrelated with the temperature anomaly.
struct SyntheticWeatherParams {
    double annual_mean_c = 15.0;
    double seasonal_amplitude_c = 10.0;
    double diurnal_amplitude_c = 4.0;
    double seasonal_phase_rad = -1.8204;  // seasonal peak around mid-July
    double diurnal_phase_rad = -2.2253;   // diurnal peak around 14:30
    double ar1_coefficient = 0.8;
    double noise_std_c = 1.2;

    double rh_base_pct = 72.0;
    double rh_temp_slope_pct_per_c = 2.0;
    double rh_ar1_coefficient = 0.9;
    double rh_noise_std_pct = 5.0;

    bool operator==(const SyntheticWeatherParams&) const = default;
};

enum class TempSource { synthetic, external_file };

struct EnvParams {
    double alpha_t_per_c = 0.0015;
    double e0_mpa = 210000.0;
    // Exponential shape constants of the modulus law. The defaults keep the
    // exponential factor >= 0.999 for T <= 60 C, i.e. negligible at ambient.
    double e1 = 4.0;
    double e2 = 6.0;
    double e3 = 500.0;
    double e4 = 500.0;

    TempSource temp_source = TempSource::synthetic;
    SyntheticWeatherParams synth{};
    std::string external_csv{};

    bool operator==(const EnvParams&) const = default;
};

struct EnvSeries {
    std::vector<double> temperature_c;
    std::vector<double> rh_pct;
    TempSource provenance = TempSource::synthetic;
};

/// Hourly temperature and relative humidity over the grid; deterministic
/// for a given seed.
inline EnvSeries synth_weather(const TimeGrid& grid, const SyntheticWeatherParams& p, std::uint64_t seed) {
    if (p.seasonal_amplitude_c < 0.0 || p.diurnal_amplitude_c < 0.0 || p.noise_std_c < 0.0 ||
        p.rh_noise_std_pct < 0.0)
        throw std::invalid_argument("synth_weather: amplitudes must be non-negative");
    if (std::abs(p.ar1_coefficient) >= 1.0 || std::abs(p.rh_ar1_coefficient) >= 1.0)
        throw std::invalid_argument("synth_weather: AR(1) coefficients must lie in (-1, 1)");

    rng::Generator gen(seed);
    EnvSeries env;
    env.provenance = TempSource::synthetic;
    const std::size_t n = grid.size();
    env.temperature_c.resize(n);
    env.rh_pct.resize(n);

    double t_resid = 0.0;
    double rh_resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const GridStamp& s = grid.at(i);
        const double season = std::sin(2.0 * M_PI * s.day_of_year / 365.0 + p.seasonal_phase_rad);
        const double diurnal = std::sin(2.0 * M_PI * s.hour / 24.0 + p.diurnal_phase_rad);
        t_resid = p.ar1_coefficient * t_resid + gen.normal(0.0, p.noise_std_c);
        const double t = p.annual_mean_c + p.seasonal_amplitude_c * season +
                         p.diurnal_amplitude_c * diurnal + t_resid;
        env.temperature_c[i] = t;

        rh_resid = p.rh_ar1_coefficient * rh_resid + gen.normal(0.0, p.rh_noise_std_pct);
        const double rh = p.rh_base_pct - p.rh_temp_slope_pct_per_c * (t - p.annual_mean_c) + rh_resid;
        env.rh_pct[i] = std::clamp(rh, 0.0, 100.0);
    }
    return env;
}

/// Temperature-dependent steel Young's modulus, in MPa:
///   E(T) = E0 (1 - alpha_T T) exp(-1/2 (T/e3)^e1 - 1/2 (T/e4)^e2)
/// Valid over the ambient window [-40, 100] C.
inline double youngs_modulus_mpa(double t_c, const EnvParams& p) {
    if (t_c < -40.0 || t_c > 100.0)
        throw std::domain_error("youngs_modulus: temperature outside [-40, 100] C");
    const double linear = 1.0 - p.alpha_t_per_c * t_c;
    const double expo = std::exp(-0.5 * std::pow(t_c / p.e3, p.e1) - 0.5 * std::pow(t_c / p.e4, p.e2));
    if (!std::isfinite(expo))
        throw std::domain_error("youngs_modulus: shape constants e1/e2 must be even integers "
                                "to admit sub-zero temperatures");
    return p.e0_mpa * linear * expo;
}

/// Hours within the calendar year with RH > 80% and T > 0 C.
inline int time_of_wetness_hours(const EnvSeries& env, const TimeGrid& grid, int year) {
    const auto [begin, end] = grid.year_range(year);
    if (env.temperature_c.size() < end || env.rh_pct.size() < end)
        throw std::invalid_argument("time_of_wetness: series shorter than the grid year");
    int hours = 0;
    for (std::size_t i = begin; i < end; ++i)
        if (env.rh_pct[i] > 80.0 && env.temperature_c[i] > 0.0) ++hours;
    return hours;
}

/// Annual corrosion drivers.
struct YearlyAggregates {
    double tow_hours = 0.0;
    double mean_temperature_c = 0.0;
};

inline YearlyAggregates yearly_aggregates(const EnvSeries& env, const TimeGrid& grid, int year) {
    const auto [begin, end] = grid.year_range(year);
    if (env.temperature_c.size() < end)
        throw std::invalid_argument("yearly_aggregates: series shorter than the grid year");
    YearlyAggregates agg;
    agg.tow_hours = time_of_wetness_hours(env, grid, year);
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += env.temperature_c[i];
    agg.mean_temperature_c = sum / static_cast<double>(end - begin);
    return agg;
}

/// Reads an hourly weather CSV with header `timestamp,T_degC,RH_pct`; rows
/// must match the filtered grid one-to-one.
inline EnvSeries load_weather_csv(const std::string& path, const TimeGrid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_weather_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_weather_csv: empty file " + path);
    if (line.rfind("timestamp,T_degC,RH_pct", 0) != 0)
        throw std::runtime_error("load_weather_csv: unexpected header: " + line);

    EnvSeries env;
    env.provenance = TempSource::external_file;
    env.temperature_c.reserve(grid.size());
    env.rh_pct.reserve(grid.size());
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string stamp, t_str, rh_str;
        if (!std::getline(ss, stamp, ',') || !std::getline(ss, t_str, ',') || !std::getline(ss, rh_str))
            throw std::runtime_error("load_weather_csv: malformed row " + std::to_string(row));
        if (row >= grid.size()) throw std::runtime_error("load_weather_csv: more rows than grid hours");

        int y = 0;
        unsigned mo = 0, d = 0, h = 0;
        if (std::sscanf(stamp.c_str(), "%d-%u-%uT%u", &y, &mo, &d, &h) != 4)
            throw std::runtime_error("load_weather_csv: bad timestamp '" + stamp + "'");
        const GridStamp& expect = grid.at(row);
        if (expect.year != y || expect.month != mo || expect.day != d || expect.hour != h)
            throw std::runtime_error("load_weather_csv: row " + std::to_string(row) +
                                     " timestamp does not match the grid (" + stamp + ")");

        const double t = std::stod(t_str);
        const double rh = std::stod(rh_str);
        if (rh < 0.0 || rh > 100.0)
            throw std::runtime_error("load_weather_csv: RH out of [0, 100] at row " + std::to_string(row));
        env.temperature_c.push_back(t);
        env.rh_pct.push_back(rh);
        ++row;
    }
    if (row != grid.size())
        throw std::runtime_error("load_weather_csv: expected " + std::to_string(grid.size()) +
                                 " rows, got " + std::to_string(row));
    return env;
}

}  // namespace shmbench
