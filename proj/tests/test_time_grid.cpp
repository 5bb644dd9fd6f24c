#include <catch_amalgamated.hpp>

#include "shmbench/rng.hpp"
#include "shmbench/time_grid.hpp"

using namespace shmbench;

TEST_CASE("three benchmark years give 26280 hourly acquisitions") {
    const TimeGrid grid = build_time_grid(2020, 1, 1, 3);
    REQUIRE(grid.size() == 26280);
    REQUIRE(grid.at(0) == GridStamp{2020, 1, 1, 0, 0});
    REQUIRE(grid.at(26279).year == 2022);
    REQUIRE(grid.at(26279).month == 12);
    REQUIRE(grid.at(26279).day == 31);
    REQUIRE(grid.at(26279).hour == 23);
}

TEST_CASE("a single non-leap year gives 8760 acquisitions") {
    REQUIRE(build_time_grid(2021, 1, 1, 1).size() == 8760);
}

TEST_CASE("a leap year still gives 8760 acquisitions after the Feb 29 drop") {
    const TimeGrid grid = build_time_grid(2020, 1, 1, 1);
    REQUIRE(grid.size() == 8760);
    for (const GridStamp& s : grid.stamps()) REQUIRE(!(s.month == 2 && s.day == 29));
}

TEST_CASE("mid-2021 index matches the damage onset anchor") {
    const TimeGrid grid = build_time_grid(2020, 1, 1, 3);
    // 366 - 1 + 181 filtered days between 2020-01-01 and 2021-06-30, times 24
    REQUIRE(grid.index_of(2021, 7, 1, 0) == 13104);
    const GridStamp& s = grid.at(13104);
    REQUIRE(s.year == 2021);
    REQUIRE(s.month == 7);
    REQUIRE(s.day == 1);
    REQUIRE(s.hour == 0);
}

TEST_CASE("timestamp/index mapping is a bijection over the filtered grid") {
    const TimeGrid grid = build_time_grid(2020, 1, 1, 3);
    rng::Generator gen(31);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t i = gen.uniform_index(grid.size());
        const GridStamp& s = grid.at(i);
        REQUIRE(grid.index_of(s.year, s.month, s.day, s.hour) == i);
    }
}

TEST_CASE("grid rejects invalid requests") {
    REQUIRE_THROWS_AS(build_time_grid(2020, 1, 1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(build_time_grid(2020, 1, 1, -2), std::invalid_argument);
    REQUIRE_THROWS_AS(build_time_grid(2020, 2, 29, 1), std::invalid_argument);

    const TimeGrid grid = build_time_grid(2020, 1, 1, 1);
    REQUIRE_THROWS_AS(grid.index_of(2020, 2, 29, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(grid.index_of(2021, 1, 1, 0), std::out_of_range);
    REQUIRE_THROWS_AS(grid.index_of(2019, 12, 31, 23), std::out_of_range);
    REQUIRE_THROWS_AS(grid.at(8760), std::out_of_range);
}

TEST_CASE("month starts land on day 1 hour 0") {
    const TimeGrid grid = build_time_grid(2020, 1, 1, 3);
    const auto starts = grid.month_start_indices();
    REQUIRE(starts.size() == 36);
    for (std::size_t idx : starts) {
        REQUIRE(grid.at(idx).day == 1);
        REQUIRE(grid.at(idx).hour == 0);
    }
    REQUIRE(starts[18] == 13104);  // 2021-07
}

TEST_CASE("year ranges cover exactly 8760 hours") {
    const TimeGrid grid = build_time_grid(2020, 1, 1, 3);
    const auto [begin, end] = grid.year_range(2021);
    REQUIRE(end - begin == 8760);
    REQUIRE(grid.at(begin).year == 2021);
    REQUIRE_THROWS(grid.year_range(2023));
}
