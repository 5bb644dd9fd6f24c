#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shmbench/environment.hpp"
#include "shmbench/time_grid.hpp"

namespace shmbench {

/// Default onset of every damage process: 1.5 years into the default grid.
constexpr std::size_t kDefaultDamageOnsetIndex = 13104;

enum class FastVariant {
    single_step,   // one -10% step
    monthly_ramp,  // 18 monthly -1% steps, cumulating to -18%
    geometric,     // 6 quarterly steps doubling from 1% to 32% cumulative
};

struct FastStep {
    std::size_t onset_index;
    double cumulative_rate;
};

/// Step instants and cumulative decay rates for the FAST scenarios. Steps
/// land on calendar-month starts, the first one at the damage window onset.
/// An onset at or past the grid end means the damage never occurs: no steps.
inline std::vector<FastStep> fast_schedule_steps(FastVariant variant, const TimeGrid& grid,
                                                 std::size_t window_start) {
    if (window_start >= grid.size()) return {};

    std::vector<std::size_t> month_starts;
    for (std::size_t idx : grid.month_start_indices())
        if (idx >= window_start) month_starts.push_back(idx);

    std::vector<FastStep> steps;
    switch (variant) {
        case FastVariant::single_step:
            steps.push_back({window_start, 0.10});
            break;
        case FastVariant::monthly_ramp: {
            if (month_starts.size() < 18)
                throw std::invalid_argument("fast_schedule_steps: grid too short for 18 monthly steps");
            for (std::size_t k = 0; k < 18; ++k)
                steps.push_back({month_starts[k], 0.01 * static_cast<double>(k + 1)});
            break;
        }
        case FastVariant::geometric: {
            // every third month across the 18-month window
            if (month_starts.size() < 16)
                throw std::invalid_argument("fast_schedule_steps: grid too short for quarterly steps");
            double rate = 0.01;
            for (std::size_t k = 0; k < 6; ++k) {
                steps.push_back({month_starts[3 * k], rate});
                rate *= 2.0;
            }
            break;
        }
        default:
            throw std::invalid_argument("fast_schedule_steps: unknown variant");
    }
    return steps;
}

/// Right-continuous per-hour decay-rate series over the whole grid.
inline std::vector<double> fast_schedule(FastVariant variant, const TimeGrid& grid,
                                         std::size_t window_start = kDefaultDamageOnsetIndex) {
    const auto steps = fast_schedule_steps(variant, grid, window_start);
    std::vector<double> series(grid.size(), 0.0);
    for (const FastStep& s : steps)
        for (std::size_t i = s.onset_index; i < series.size(); ++i) series[i] = s.cumulative_rate;
    return series;
}

/// Dose-response atmospheric corrosion model
///   d(t) = A t^B (TOW/C)^D (1 + SO2/E)^F (1 + Cl/G)^H exp(J (T + T0))
/// with d in micrometers and t in years. The shape coefficients come from
/// the dose-response literature; the amplitude A is calibrated against the
/// benchmark's anchor rate unless set explicitly.
struct CorrosionParams {
    std::optional<double> amplitude_um{};  // empty: calibrate from anchor_um_per_year
    double anchor_um_per_year = 47.03;
    double b = 1.0;
    double c_tow_h = 3800.0;
    double d_exp = 0.46;
    double e_so2 = 25.0;
    double f_exp = 0.62;
    double g_cl = 50.0;
    double h_exp = 0.34;
    double j_per_c = 0.016;
    double t0_c = 20.0;

    // ISO 9223 C3 "medium" corrosivity drivers
    double so2_ug_m3 = 17.5;
    double cl_mg_m2_day = 3.0;

    std::size_t exposure_start_index = kDefaultDamageOnsetIndex;

    void validate() const {
        if (!(c_tow_h > 0.0) || !(e_so2 > 0.0) || !(g_cl > 0.0))
            throw std::invalid_argument("CorrosionParams: divisor coefficients must be positive");
        if (so2_ug_m3 < 0.0 || cl_mg_m2_day < 0.0)
            throw std::invalid_argument("CorrosionParams: pollutant inputs must be non-negative");
    }

    bool operator==(const CorrosionParams&) const = default;
};

/// Product of all exposure factors except A t^B.
inline double corrosion_environment_factor(const CorrosionParams& p, const YearlyAggregates& agg) {
    p.validate();
    if (!(agg.tow_hours > 0.0))
        throw std::invalid_argument("corrosion_environment_factor: TOW must be positive");
    return std::pow(agg.tow_hours / p.c_tow_h, p.d_exp) *
           std::pow(1.0 + p.so2_ug_m3 / p.e_so2, p.f_exp) *
           std::pow(1.0 + p.cl_mg_m2_day / p.g_cl, p.h_exp) *
           std::exp(p.j_per_c * (agg.mean_temperature_c + p.t0_c));
}

/// Amplitude A such that one year of exposure under `agg` gives the anchor
/// corrosion loss.
inline double calibrate_corrosion_amplitude(const CorrosionParams& p, const YearlyAggregates& agg) {
    return p.anchor_um_per_year / corrosion_environment_factor(p, agg);
}

inline double resolved_corrosion_amplitude(const CorrosionParams& p, const YearlyAggregates& agg) {
    return p.amplitude_um ? *p.amplitude_um : calibrate_corrosion_amplitude(p, agg);
}

/// Corrosion loss in micrometers after t years of exposure, at natural rate
/// (multiplier 1).
inline double corrosion_depth_um(double t_years, const CorrosionParams& p, const YearlyAggregates& agg) {
    if (t_years < 0.0) throw std::invalid_argument("corrosion_depth: negative exposure time");
    if (t_years == 0.0) return 0.0;
    return resolved_corrosion_amplitude(p, agg) * std::pow(t_years, p.b) *
           corrosion_environment_factor(p, agg);
}

/// SLOW damage severities and their rate multipliers.
enum class SlowLevel { ageing, accelerated_10x, accelerated_20x };

inline double slow_level_multiplier(SlowLevel level) {
    switch (level) {
        case SlowLevel::ageing: return 1.0;
        case SlowLevel::accelerated_10x: return 10.0;
        case SlowLevel::accelerated_20x: return 20.0;
    }
    throw std::invalid_argument("slow_level_multiplier: unknown level");
}

/// Hourly corrosion depth in millimeters over the whole grid: zero before
/// the exposure start, then the dose-response depth with the level's rate
/// multiplier. Monotone non-decreasing for B > 0.
inline std::vector<double> slow_schedule_mm(SlowLevel level, const TimeGrid& grid,
                                            const CorrosionParams& p, const YearlyAggregates& agg) {
    const double multiplier = slow_level_multiplier(level);
    std::vector<double> series(grid.size(), 0.0);
    for (std::size_t i = p.exposure_start_index; i < series.size(); ++i) {
        const double t_years =
            static_cast<double>(i - p.exposure_start_index) / static_cast<double>(TimeGrid::hours_per_year);
        series[i] = multiplier * corrosion_depth_um(t_years, p, agg) * 1e-3;
    }
    return series;
}

}  // namespace shmbench
