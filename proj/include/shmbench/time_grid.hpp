#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shmbench {

/// One timestamp on the filtered monitoring grid.
struct GridStamp {
    int year;
    unsigned month;  // 1..12
    unsigned day;    // 1..31
    unsigned hour;   // 0..23
    unsigned day_of_year;  // 0..364 on the filtered grid (Feb 29 removed)

    bool operator==(const GridStamp&) const = default;
};

/// Hourly acquisition grid over whole calendar years with every Feb 29
/// removed, so each year contributes exactly 8760 acquisitions.
class TimeGrid {
public:
    static constexpr std::size_t hours_per_year = 8760;

    TimeGrid() = default;

    std::size_t size() const { return stamps_.size(); }
    int n_years() const { return n_years_; }
    std::chrono::year_month_day start_date() const { return start_; }

    const GridStamp& at(std::size_t i) const {
        if (i >= stamps_.size()) throw std::out_of_range("TimeGrid::at: index " + std::to_string(i));
        return stamps_[i];
    }

    const std::vector<GridStamp>& stamps() const { return stamps_; }

    /// Inverse of at(); throws if the timestamp is not on the grid
    /// (off-grid hour or a dropped Feb 29).
    std::size_t index_of(int year, unsigned month, unsigned day, unsigned hour) const {
        if (month == 2 && day == 29) throw std::invalid_argument("TimeGrid::index_of: Feb 29 is not on the grid");
        const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                              std::chrono::day{day}};
        if (!ymd.ok() || hour > 23) throw std::invalid_argument("TimeGrid::index_of: invalid timestamp");
        const auto target = std::chrono::sys_days{ymd};
        const auto base = std::chrono::sys_days{start_};
        if (target < base) throw std::out_of_range("TimeGrid::index_of: before grid start");
        long days = (target - base).count();
        days -= leap_days_between(base, target);
        const std::size_t idx = static_cast<std::size_t>(days) * 24 + hour;
        if (idx >= stamps_.size()) throw std::out_of_range("TimeGrid::index_of: past grid end");
        return idx;
    }

    /// Indices of the first acquisition of each calendar month, in order.
    std::vector<std::size_t> month_start_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < stamps_.size(); ++i) {
            const auto& s = stamps_[i];
            if (s.day == 1 && s.hour == 0) out.push_back(i);
        }
        return out;
    }

    /// Index range [begin, end) covering one calendar year, or throws if the
    /// grid does not contain that year completely.
    std::pair<std::size_t, std::size_t> year_range(int year) const {
        const std::size_t begin = index_of(year, 1, 1, 0);
        const std::size_t end = begin + hours_per_year;
        if (end > stamps_.size() || stamps_[begin].year != year)
            throw std::invalid_argument("TimeGrid::year_range: incomplete year " + std::to_string(year));
        return {begin, end};
    }

    friend TimeGrid build_time_grid(std::chrono::year_month_day start, int n_years);

private:
    static long leap_days_between(std::chrono::sys_days from, std::chrono::sys_days to) {
        // Feb 29s in [from, to)
        long count = 0;
        const auto from_ymd = std::chrono::year_month_day{from};
        const auto to_ymd = std::chrono::year_month_day{to};
        for (int y = static_cast<int>(from_ymd.year()); y <= static_cast<int>(to_ymd.year()); ++y) {
            const std::chrono::year yy{y};
            if (!yy.is_leap()) continue;
            const std::chrono::sys_days feb29{yy / std::chrono::February / std::chrono::day{29}};
            if (feb29 >= from && feb29 < to) ++count;
        }
        return count;
    }

    std::chrono::year_month_day start_{};
    int n_years_ = 0;
    std::vector<GridStamp> stamps_;
};

/// Builds the filtered hourly grid: n_years whole years from `start`,
/// dropping every Feb 29 so the count is exactly n_years * 8760.
inline TimeGrid build_time_grid(std::chrono::year_month_day start, int n_years) {
    if (n_years < 1) throw std::invalid_argument("build_time_grid: n_years must be >= 1");
    if (!start.ok()) throw std::invalid_argument("build_time_grid: invalid start date");
    if (start.month() == std::chrono::February && start.day() == std::chrono::day{29})
        throw std::invalid_argument("build_time_grid: start date cannot be Feb 29");

    TimeGrid grid;
    grid.start_ = start;
    grid.n_years_ = n_years;
    grid.stamps_.reserve(static_cast<std::size_t>(n_years) * TimeGrid::hours_per_year);

    const auto end_day = std::chrono::sys_days{start + std::chrono::years{n_years}};
    for (auto day = std::chrono::sys_days{start}; day < end_day; day += std::chrono::days{1}) {
        const std::chrono::year_month_day ymd{day};
        if (ymd.month() == std::chrono::February && ymd.day() == std::chrono::day{29}) continue;
        // day-of-year on the filtered calendar: Feb 29 does not count
        const auto jan1 = std::chrono::sys_days{ymd.year() / std::chrono::January / std::chrono::day{1}};
        long doy = (day - jan1).count();
        if (ymd.year().is_leap() && ymd.month() > std::chrono::February) --doy;
        for (unsigned h = 0; h < 24; ++h) {
            grid.stamps_.push_back(GridStamp{static_cast<int>(ymd.year()),
                                             static_cast<unsigned>(ymd.month()),
                                             static_cast<unsigned>(ymd.day()), h,
                                             static_cast<unsigned>(doy)});
        }
    }
    return grid;
}

inline TimeGrid build_time_grid(int year, unsigned month, unsigned day, int n_years) {
    return build_time_grid(std::chrono::year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                                       std::chrono::day{day}},
                           n_years);
}

}  // namespace shmbench
