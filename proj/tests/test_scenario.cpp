#include <catch_amalgamated.hpp>

#include <filesystem>

#include "shmbench/scenario.hpp"
#include "shmbench/subdataset.hpp"

using namespace shmbench;
using Catch::Approx;

namespace {
const ScenarioRealization& benchmark_realization() {
    static const ScenarioRealization r = realize(ScenarioConfig{});
    return r;
}
}  // namespace

TEST_CASE("config survives a JSON round trip unchanged") {
    ScenarioConfig config{};
    config.master_seed = 987654321;
    config.live_load.sigma_lt_override_kn_m2.reset();
    config.env.synth.annual_mean_c = 14.25;
    config.excitation.max_attempts = 7;
    config.d4_policy.run_length_max = 19;
    config.corrosion.amplitude_um = 21.5;

    const nlohmann::json j = config;
    const ScenarioConfig back = j.get<ScenarioConfig>();
    CHECK(back == config);
}

TEST_CASE("config file save/load round trip") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "shmbench_config_test.json";
    ScenarioConfig config{};
    config.master_seed = 5150;
    save_config(config, path.string());
    CHECK(load_config(path.string()) == config);
    fs::remove(path);
    CHECK_THROWS(load_config(path.string()));
}

TEST_CASE("defaults in a sparse config document") {
    const auto j = nlohmann::json::parse(R"({"master_seed": 42})");
    const ScenarioConfig config = j.get<ScenarioConfig>();
    CHECK(config.master_seed == 42);
    CHECK(config.grid.n_years == 3);
    CHECK(config.beam.span_mm == 6000.0);
    CHECK(config.live_load.sigma_lt_override_kn_m2 == 0.07);
}

TEST_CASE("realization is deterministic for equal configs") {
    const ScenarioRealization a = realize(ScenarioConfig{});
    const ScenarioRealization& b = benchmark_realization();
    CHECK(a.env.temperature_c == b.env.temperature_c);
    CHECK(a.load.p_des_kn_m == b.load.p_des_kn_m);
    CHECK(a.corrosion_amplitude_um == b.corrosion_amplitude_um);
    CHECK(a.n_acquisitions() == 26280);
}

TEST_CASE("undamaged covariates at the first acquisition") {
    const ScenarioRealization& r = benchmark_realization();
    const SubDatasetSpec d1 = make_subdataset_spec(SubDataset::d1, r);
    const CovariateRecord rec = covariates_for(0, r, d1);
    CHECK(rec.index == 0);
    CHECK(rec.d_fast == 0.0);
    CHECK(rec.d_slow_mm == 0.0);
    CHECK_FALSE(rec.sfm.has_value());
    CHECK_FALSE(rec.epsilon_flag);  // measurement noise off by default
    CHECK(rec.sigma_human >= 5e-6);
    CHECK(rec.sigma_human <= 5e-4);
    CHECK(rec.sigma_traffic >= 1e-6);
    CHECK(rec.sigma_traffic <= 2e-4);
    CHECK(rec.p_des_kn_m == r.load.p_des_kn_m[0]);
}

TEST_CASE("covariates around the damage onset of D2.1") {
    const ScenarioRealization& r = benchmark_realization();
    const SubDatasetSpec d21 = make_subdataset_spec(SubDataset::d2_1, r);
    CHECK(covariates_for(13103, r, d21).d_fast == 0.0);
    CHECK(covariates_for(13104, r, d21).d_fast == 0.10);
    CHECK_THROWS_AS(covariates_for(26280, r, d21), std::out_of_range);
}

TEST_CASE("covariate records are frozen value snapshots") {
    const ScenarioRealization& r = benchmark_realization();
    const SubDatasetSpec d1 = make_subdataset_spec(SubDataset::d1, r);
    const CovariateRecord a = covariates_for(7, r, d1);
    const CovariateRecord b = covariates_for(7, r, d1);
    CHECK(a == b);
}

TEST_CASE("sub-dataset naming and file name convention") {
    CHECK(subdataset_name(SubDataset::d2_1) == "D2.1");
    CHECK(parse_subdataset("D2.1") == SubDataset::d2_1);
    CHECK(parse_subdataset("D5") == SubDataset::d5);
    CHECK_THROWS(parse_subdataset("D9"));
    CHECK(acquisition_filename(0, SubDataset::d2_1) == "acc00000-21.h5");
    CHECK(acquisition_filename(12, SubDataset::d1) == "acc00012-1.h5");
    CHECK(acquisition_filename(26279, SubDataset::d5) == "acc26279-5.h5");
}

TEST_CASE("km matrix: counterfactual windows and the 10% stiffness drop") {
    const ScenarioRealization& r = benchmark_realization();
    const SubDatasetSpec d1 = make_subdataset_spec(SubDataset::d1, r);
    const SubDatasetSpec d21 = make_subdataset_spec(SubDataset::d2_1, r);
    const SubDatasetSpec d32 = make_subdataset_spec(SubDataset::d3_2, r);

    for (const std::size_t i : {13104UL, 20000UL, 26279UL}) {
        const KmRow base = km_for(i, r, d1);
        const KmRow fast = km_for(i, r, d21);
        REQUIRE(fast.k_n_m / base.k_n_m == Approx(0.9).epsilon(1e-12));
        REQUIRE(fast.m_kg == base.m_kg);
    }
    // pre-onset rows coincide with the undamaged history
    for (const std::size_t i : {0UL, 5000UL, 13103UL}) {
        const KmRow base = km_for(i, r, d1);
        const KmRow slow = km_for(i, r, d32);
        REQUIRE(slow.k_n_m == base.k_n_m);
        REQUIRE(slow.m_kg == base.m_kg);
    }
    // corrosion reduces both stiffness and mass after the onset
    const KmRow late_base = km_for(26279, r, d1);
    const KmRow late_slow = km_for(26279, r, d32);
    CHECK(late_slow.k_n_m < late_base.k_n_m);
    CHECK(late_slow.m_kg < late_base.m_kg);
}

TEST_CASE("km matrix rows are positive and produce in-band frequencies") {
    const ScenarioRealization& r = benchmark_realization();
    const SubDatasetSpec d1 = make_subdataset_spec(SubDataset::d1, r);
    const auto km = build_km_matrix(r, d1);
    REQUIRE(km.size() == 26280);
    for (std::size_t i = 0; i < km.size(); i += 481) {
        REQUIRE(km[i].k_n_m > 0.0);
        REQUIRE(km[i].m_kg > 0.0);
        const double f = natural_frequency_hz(km[i].k_n_m, km[i].m_kg);
        REQUIRE(f > 7.0);
        REQUIRE(f < 15.0);
    }
}

TEST_CASE("undamaged frequency at reference conditions is near 9 Hz") {
    const ScenarioRealization& r = benchmark_realization();
    const SubDatasetSpec d1 = make_subdataset_spec(SubDataset::d1, r);
    // pick the acquisition whose temperature and load sit closest to 20 C / 43.72
    std::size_t best = 0;
    double best_score = 1e300;
    for (std::size_t i = 0; i < r.n_acquisitions(); ++i) {
        const double score = std::abs(r.env.temperature_c[i] - 20.0) +
                             std::abs(r.load.p_des_kn_m[i] - 43.72);
        if (score < best_score) {
            best_score = score;
            best = i;
        }
    }
    const KmRow km = km_for(best, r, d1);
    CHECK(natural_frequency_hz(km.k_n_m, km.m_kg) == Approx(9.0).margin(0.35));
}

TEST_CASE("D5 damage composes the D2.3 and D3.3 schedules multiplicatively") {
    const ScenarioRealization& r = benchmark_realization();
    const SubDatasetSpec d23 = make_subdataset_spec(SubDataset::d2_3, r);
    const SubDatasetSpec d33 = make_subdataset_spec(SubDataset::d3_3, r);
    const SubDatasetSpec d5 = make_subdataset_spec(SubDataset::d5, r);

    CHECK(d5.fast_rate == d23.fast_rate);
    CHECK(d5.slow_depth_mm == d33.slow_depth_mm);

    const std::size_t i = 20000;
    const SectionProperties sec = corroded_section(r.config.beam.section, d5.slow_depth_mm[i]);
    const double expected = equivalent_stiffness_n_m(r.e_mpa[i], sec.inertia_mm4,
                                                     r.config.beam.span_mm, d5.fast_rate[i]);
    CHECK(km_for(i, r, d5).k_n_m == Approx(expected).epsilon(1e-12));
}

TEST_CASE("deflection history matches the static prediction scale") {
    const ScenarioRealization& r = benchmark_realization();
    const SubDatasetSpec d1 = make_subdataset_spec(SubDataset::d1, r);
    const auto defl = deflection_series(r, d1);
    double mean = 0.0;
    for (double v : defl) mean += v;
    mean /= static_cast<double>(defl.size());
    CHECK(mean == Approx(3.0378).epsilon(0.05));  // delta(p_G) + delta(p_Q) = 1.99 + 1.04

    // deflection and stiffness paths stay mutually consistent
    const std::size_t i = 4242;
    const KmRow km = km_for(i, r, d1);
    CHECK(defl[i] == Approx(r.load.p_des_kn_m[i] * r.config.beam.span_mm / km.k_n_m * 1e3)
                         .epsilon(1e-12));
}

TEST_CASE("environmental frequency variability stays inside the budget") {
    const ScenarioRealization& r = benchmark_realization();
    double e_min = 1e300, e_max = 0.0, e_sum = 0.0;
    for (double e : r.e_mpa) {
        e_min = std::min(e_min, e);
        e_max = std::max(e_max, e);
        e_sum += e;
    }
    const double e_ref = e_sum / static_cast<double>(r.e_mpa.size());
    CHECK(std::sqrt(e_max / e_ref) - 1.0 < 0.05);
    CHECK(1.0 - std::sqrt(e_min / e_ref) < 0.05);
}
