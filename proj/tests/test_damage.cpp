#include <catch_amalgamated.hpp>

#include <cmath>

#include "shmbench/damage.hpp"
#include "shmbench/structure.hpp"

using namespace shmbench;
using Catch::Approx;

namespace {
const TimeGrid& benchmark_grid() {
    static const TimeGrid grid = build_time_grid(2020, 1, 1, 3);
    return grid;
}

YearlyAggregates temperate_urban() { return {2959.0, 15.0}; }
}  // namespace

TEST_CASE("single-step schedule jumps to 10% at the onset") {
    const auto steps = fast_schedule_steps(FastVariant::single_step, benchmark_grid(), 13104);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].onset_index == 13104);
    CHECK(steps[0].cumulative_rate == 0.10);

    const auto series = fast_schedule(FastVariant::single_step, benchmark_grid());
    CHECK(series[13103] == 0.0);
    CHECK(series[13104] == 0.10);  // right-continuous step
    CHECK(series[20000] == 0.10);
    CHECK(series.back() == 0.10);
}

TEST_CASE("monthly ramp accumulates 18 one-percent steps") {
    const auto steps = fast_schedule_steps(FastVariant::monthly_ramp, benchmark_grid(), 13104);
    REQUIRE(steps.size() == 18);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        CHECK(steps[k].cumulative_rate == Approx(0.01 * (k + 1)).epsilon(1e-12));
        const GridStamp& s = benchmark_grid().at(steps[k].onset_index);
        CHECK(s.day == 1);
        CHECK(s.hour == 0);
    }
    CHECK(steps.front().onset_index == 13104);
    CHECK(steps.back().cumulative_rate == Approx(0.18).epsilon(1e-12));

    const auto series = fast_schedule(FastVariant::monthly_ramp, benchmark_grid());
    CHECK(series.back() == Approx(0.18).epsilon(1e-12));
    // non-decreasing, changes only at step instants
    for (std::size_t i = 1; i < series.size(); ++i) REQUIRE(series[i] >= series[i - 1]);
}

TEST_CASE("geometric schedule doubles up to 32%") {
    const auto steps = fast_schedule_steps(FastVariant::geometric, benchmark_grid(), 13104);
    REQUIRE(steps.size() == 6);
    const double expected[] = {0.01, 0.02, 0.04, 0.08, 0.16, 0.32};
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(steps[k].cumulative_rate == Approx(expected[k]).epsilon(1e-12));
        if (k > 0)  // quarterly spacing
            CHECK(benchmark_grid().at(steps[k].onset_index).month ==
                  (benchmark_grid().at(steps[k - 1].onset_index).month + 3 - 1) % 12 + 1);
    }
    // the last level deliberately exceeds the plastic threshold
    CHECK(steps.back().cumulative_rate > 0.2925);
}

TEST_CASE("an onset beyond the grid leaves the structure undamaged") {
    const TimeGrid year = build_time_grid(2021, 1, 1, 1);
    CHECK(fast_schedule_steps(FastVariant::geometric, year, 9000).empty());
    const auto series = fast_schedule(FastVariant::single_step, year, 9000);
    for (double v : series) REQUIRE(v == 0.0);
}

TEST_CASE("short grids cannot host the long step schedules") {
    const TimeGrid year = build_time_grid(2021, 1, 1, 1);
    CHECK_THROWS_AS(fast_schedule_steps(FastVariant::monthly_ramp, year, 0), std::invalid_argument);
    CHECK_THROWS_AS(fast_schedule_steps(FastVariant::geometric, year, 4000), std::invalid_argument);
}

TEST_CASE("corrosion depth: zero exposure, calibration anchor, errors") {
    CorrosionParams p{};
    const YearlyAggregates agg = temperate_urban();
    CHECK(corrosion_depth_um(0.0, p, agg) == 0.0);
    CHECK(corrosion_depth_um(1.0, p, agg) == Approx(47.03).epsilon(1e-9));  // calibrated
    CHECK_THROWS_AS(corrosion_depth_um(-1.0, p, agg), std::invalid_argument);

    // explicit amplitude wins over calibration
    CorrosionParams fixed = p;
    fixed.amplitude_um = 2.0 * calibrate_corrosion_amplitude(p, agg);
    CHECK(corrosion_depth_um(1.0, fixed, agg) == Approx(2.0 * 47.03).epsilon(1e-9));
}

TEST_CASE("century extrapolation is consistent with the flange-loss figure") {
    CorrosionParams p{};
    const double d100_mm = corrosion_depth_um(100.0, p, temperate_urban()) * 1e-3;
    CHECK(d100_mm / 13.5 == Approx(0.35).epsilon(0.10));
}

TEST_CASE("slow schedule: onset, monotonicity, level scaling") {
    CorrosionParams p{};
    const YearlyAggregates agg = temperate_urban();
    const auto lev0 = slow_schedule_mm(SlowLevel::ageing, benchmark_grid(), p, agg);
    const auto lev1 = slow_schedule_mm(SlowLevel::accelerated_10x, benchmark_grid(), p, agg);
    const auto lev3 = slow_schedule_mm(SlowLevel::accelerated_20x, benchmark_grid(), p, agg);

    REQUIRE(lev0.size() == benchmark_grid().size());
    for (std::size_t i = 0; i < 13104; ++i) REQUIRE(lev0[i] == 0.0);
    for (std::size_t i = 1; i < lev0.size(); ++i) REQUIRE(lev0[i] >= lev0[i - 1]);

    for (std::size_t i = 13104; i < lev0.size(); i += 997) {
        REQUIRE(lev1[i] == Approx(10.0 * lev0[i]).margin(1e-15));
        REQUIRE(lev3[i] == Approx(20.0 * lev0[i]).margin(1e-15));
    }

    // 1.5 years of exposure at the anchor rate
    const double t_end = static_cast<double>(benchmark_grid().size() - 1 - 13104) / 8760.0;
    CHECK(lev0.back() == Approx(47.03 * t_end * 1e-3).epsilon(1e-9));
    CHECK(lev0.back() == Approx(0.0705).epsilon(0.01));
}

TEST_CASE("corrosion erodes the resisting moment without exhausting it in-window") {
    // capacity declines strictly with the corrosion level; at the end of the
    // 1.5-year window even the 20x level keeps W_el * f_yd above the acting
    // ULS moment (a ~2 mm depth would be needed to cross it)
    CorrosionParams p{};
    const YearlyAggregates agg = temperate_urban();
    const IpeSection section{};
    const double f_yd = 235.0 / 1.05;
    const double m_a_uls = 183.11;

    double prev_capacity = 1e300;
    for (SlowLevel level : {SlowLevel::ageing, SlowLevel::accelerated_10x, SlowLevel::accelerated_20x}) {
        const auto depth = slow_schedule_mm(level, benchmark_grid(), p, agg);
        const double capacity = corroded_section(section, depth.back()).w_el_mm3 * f_yd * 1e-6;
        CHECK(capacity < prev_capacity);
        CHECK(capacity > m_a_uls);
        prev_capacity = capacity;
    }
    CHECK(corroded_section(section, 2.1).w_el_mm3 * f_yd * 1e-6 < m_a_uls);
}

TEST_CASE("environment factor rejects non-physical drivers") {
    CorrosionParams p{};
    CHECK_THROWS(corrosion_environment_factor(p, YearlyAggregates{0.0, 15.0}));
    CorrosionParams bad = p;
    bad.c_tow_h = 0.0;
    CHECK_THROWS(corrosion_environment_factor(bad, temperate_urban()));
}
