#include <catch_amalgamated.hpp>

#include <cmath>

#include "shmbench/live_load.hpp"

using namespace shmbench;
using Catch::Approx;

TEST_CASE("sustained std: closed form, term elimination, override") {
    LiveLoadParams p{};
    p.sigma_lt_override_kn_m2.reset();
    // sqrt(0.15^2 + 0.3^2 * 1 * 20/30)
    CHECK(eq_sustained_std(p) == Approx(0.2872281).epsilon(1e-6));
    CHECK(sustained_std(p) == Approx(0.2872281).epsilon(1e-6));

    LiveLoadParams no_local = p;
    no_local.kappa = 0.0;
    CHECK(sustained_std(no_local) == Approx(0.15).epsilon(1e-12));

    LiveLoadParams table = p;
    table.sigma_lt_override_kn_m2 = 0.07;
    CHECK(sustained_std(table) == 0.07);
}

TEST_CASE("intermittent std: closed form, term elimination, override") {
    LiveLoadParams p{};
    p.sigma_st_override_kn_m2.reset();
    CHECK(eq_intermittent_std(p) == Approx(0.3265986).epsilon(1e-6));  // sqrt(0.16*2/3)

    LiveLoadParams no_local = p;
    no_local.kappa = 0.0;
    CHECK(intermittent_std(no_local) == 0.0);

    LiveLoadParams table = p;
    table.sigma_st_override_kn_m2 = 0.03;
    CHECK(intermittent_std(table) == 0.03);
}

TEST_CASE("gamma moment matching") {
    const GammaShapeRate g = gamma_shape_rate(3.0, 0.07);
    CHECK(g.shape == Approx(1836.73469).epsilon(1e-8));
    CHECK(g.rate == Approx(612.244898).epsilon(1e-8));

    const GammaShapeRate unit = gamma_shape_rate(1.0, 1.0);
    CHECK(unit.shape == 1.0);  // exponential special case
    CHECK(unit.rate == 1.0);

    rng::Generator gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        const double mean = gen.uniform(0.1, 20.0);
        const double std = gen.uniform(0.01, 5.0);
        const GammaShapeRate x = gamma_shape_rate(mean, std);
        REQUIRE(x.shape / x.rate == Approx(mean).epsilon(1e-12));
        REQUIRE(std::sqrt(x.shape) / x.rate == Approx(std).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gamma_shape_rate(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("gamma sampler reproduces the target moments") {
    rng::Generator gen(2024);
    const GammaShapeRate g = gamma_shape_rate(3.0, 0.07);
    double sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) sum += gen.gamma(g.shape, g.rate);
    CHECK(sum / n == Approx(3.0).epsilon(0.01));
}

TEST_CASE("degenerate renewal rate holds a single draw") {
    LiveLoadParams p{};
    p.inv_lambda_years = 1e9;
    const auto series = realize_sustained(26280, p, 77);
    for (double v : series) REQUIRE(v == series.front());
    CHECK(series.front() > 0.0);
}

TEST_CASE("sustained line load has the reference 15 kN/m long-run mean") {
    LiveLoadParams p{};
    double total = 0.0;
    std::size_t count = 0;
    for (int seed = 0; seed < 50; ++seed) {
        const auto line = to_line_load(realize_sustained(26280, p, 1000 + seed), 5.0);
        for (double v : line) total += v;
        count += line.size();
    }
    CHECK(total / static_cast<double>(count) == Approx(15.0).epsilon(0.02));
}

TEST_CASE("intermittent process vanishes for huge inter-arrival times") {
    LiveLoadParams p{};
    p.inv_nu_years = 1e9;
    const auto out = realize_intermittent(26280, p, 3);
    CHECK(out.events.empty());
    for (double v : out.series_kn_m2) REQUIRE(v == 0.0);
}

TEST_CASE("intermittent events occupy exactly five days of hourly samples") {
    LiveLoadParams p{};
    int full_events = 0;
    for (int seed = 0; seed < 20; ++seed) {
        const auto out = realize_intermittent(26280, p, 500 + seed);
        for (const SpikeEvent& ev : out.events) {
            REQUIRE(ev.intensity_kn_m2 >= 0.0);
            if (!ev.truncated) {
                REQUIRE(ev.duration_hours == 120);
                ++full_events;
            }
            // every affected sample actually carries the event
            for (std::size_t h = ev.start_hour; h < ev.start_hour + ev.duration_hours; ++h)
                REQUIRE(out.series_kn_m2[h] >= ev.intensity_kn_m2 - 1e-12);
        }
    }
    CHECK(full_events > 0);
}

TEST_CASE("expected event count matches the Poisson oracle") {
    LiveLoadParams p{};
    double events = 0.0;
    const int seeds = 200;
    for (int seed = 0; seed < seeds; ++seed)
        events += static_cast<double>(realize_intermittent(26280, p, 9000 + seed).events.size());
    // 3 years at 5 events/year
    CHECK(events / seeds == Approx(15.0).epsilon(0.05));
}

TEST_CASE("all realized intensities are non-negative") {
    LiveLoadParams p{};
    const auto lt = realize_sustained(26280, p, 41);
    const auto st = realize_intermittent(26280, p, 42);
    for (double v : lt) REQUIRE(v >= 0.0);
    for (double v : st.series_kn_m2) REQUIRE(v >= 0.0);
}

TEST_CASE("SLS combination") {
    const LoadProcess lp = combine_sls(28.72, {15.0, 0.0}, {0.0, 0.0});
    CHECK(lp.p_des_kn_m[0] == Approx(43.72).epsilon(1e-12));
    CHECK(lp.p_des_kn_m[1] == Approx(28.72).epsilon(1e-12));
    CHECK_THROWS_AS(combine_sls(28.72, {1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("load envelope reports the plausibility statistics") {
    LiveLoadParams p{};
    const auto lt = to_line_load(realize_sustained(26280, p, 61), 5.0);
    const auto st = realize_intermittent(26280, p, 62);
    const LoadProcess lp = combine_sls(28.72, lt, to_line_load(st.series_kn_m2, 5.0), st.events);
    const LoadEnvelope env = load_envelope(lp);
    CHECK(env.mean_p_q > 10.0);
    CHECK(env.mean_p_q < 20.0);
    CHECK(env.max_p_q >= env.min_p_q);
    CHECK(env.max_ratio_pct > env.min_ratio_pct);
}
