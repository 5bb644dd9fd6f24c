#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "shmbench/damage.hpp"
#include "shmbench/environment.hpp"
#include "shmbench/excitation.hpp"
#include "shmbench/faults.hpp"
#include "shmbench/live_load.hpp"
#include "shmbench/rng.hpp"
#include "shmbench/structure.hpp"
#include "shmbench/time_grid.hpp"

namespace shmbench {

struct GridSpec {
    int start_year = 2020;
    unsigned start_month = 1;
    unsigned start_day = 1;
    int n_years = 3;

    bool operator==(const GridSpec&) const = default;
};

/// Complete description of one benchmark run. Two equal configs (same
/// master_seed included) generate bit-identical corpora, whatever the
/// worker count.
struct ScenarioConfig {
    GridSpec grid{};
    BeamModel beam{};
    LiveLoadParams live_load{};
    EnvParams env{};
    CorrosionParams corrosion{};
    ExcitationParams excitation{};
    FaultPolicy d4_policy{.contamination_fraction = 0.5, .subset_target = 6600};
    FaultPolicy d5_policy{.contamination_fraction = 0.3, .subset_target = std::nullopt};
    std::size_t damage_onset_index = kDefaultDamageOnsetIndex;
    int calibration_year = 2020;
    std::uint64_t master_seed = 20200101;
    int n_workers = 0;  // 0: pick up SHMBENCH_WORKERS or hardware concurrency

    bool operator==(const ScenarioConfig&) const = default;
};

// ---------------------------------------------------------------------------
// JSON mapping

inline void to_json(nlohmann::json& j, const GridSpec& g) {
    j = {{"start_year", g.start_year},
         {"start_month", g.start_month},
         {"start_day", g.start_day},
         {"n_years", g.n_years}};
}
inline void from_json(const nlohmann::json& j, GridSpec& g) {
    g.start_year = j.value("start_year", g.start_year);
    g.start_month = j.value("start_month", g.start_month);
    g.start_day = j.value("start_day", g.start_day);
    g.n_years = j.value("n_years", g.n_years);
}

inline void to_json(nlohmann::json& j, const IpeSection& s) {
    j = {{"h_mm", s.h_mm},       {"b_mm", s.b_mm},
         {"t_w_mm", s.t_w_mm},   {"t_f_mm", s.t_f_mm},
         {"root_radius_mm", s.root_radius_mm},
         {"area_mm2", s.area_mm2},
         {"inertia_mm4", s.inertia_mm4},
         {"w_el_mm3", s.w_el_mm3},
         {"w_pl_mm3", s.w_pl_mm3}};
}
inline void from_json(const nlohmann::json& j, IpeSection& s) {
    s.h_mm = j.value("h_mm", s.h_mm);
    s.b_mm = j.value("b_mm", s.b_mm);
    s.t_w_mm = j.value("t_w_mm", s.t_w_mm);
    s.t_f_mm = j.value("t_f_mm", s.t_f_mm);
    s.root_radius_mm = j.value("root_radius_mm", s.root_radius_mm);
    s.area_mm2 = j.value("area_mm2", s.area_mm2);
    s.inertia_mm4 = j.value("inertia_mm4", s.inertia_mm4);
    s.w_el_mm3 = j.value("w_el_mm3", s.w_el_mm3);
    s.w_pl_mm3 = j.value("w_pl_mm3", s.w_pl_mm3);
}

inline void to_json(nlohmann::json& j, const BeamModel& b) {
    j = {{"span_mm", b.span_mm},
         {"section", b.section},
         {"e0_mpa", b.e0_mpa},
         {"sigma_y_mpa", b.sigma_y_mpa},
         {"gamma_s", b.gamma_s},
         {"density_steel_kg_m3", b.density_steel_kg_m3},
         {"density_concrete_kg_m3", b.density_concrete_kg_m3},
         {"slab_thickness_mm", b.slab_thickness_mm},
         {"tributary_area_m2", b.tributary_area_m2},
         {"p_g1_kn_m", b.p_g1_kn_m},
         {"p_g2_kn_m", b.p_g2_kn_m},
         {"p_q_ref_kn_m", b.p_q_ref_kn_m},
         {"gamma_g1", b.gamma_g1},
         {"gamma_g2", b.gamma_g2},
         {"gamma_q", b.gamma_q},
         {"zeta", b.zeta},
         {"mass_participation", b.mass_participation},
         {"bc_factor", b.bc_factor}};
}
inline void from_json(const nlohmann::json& j, BeamModel& b) {
    b.span_mm = j.value("span_mm", b.span_mm);
    if (j.contains("section")) j.at("section").get_to(b.section);
    b.e0_mpa = j.value("e0_mpa", b.e0_mpa);
    b.sigma_y_mpa = j.value("sigma_y_mpa", b.sigma_y_mpa);
    b.gamma_s = j.value("gamma_s", b.gamma_s);
    b.density_steel_kg_m3 = j.value("density_steel_kg_m3", b.density_steel_kg_m3);
    b.density_concrete_kg_m3 = j.value("density_concrete_kg_m3", b.density_concrete_kg_m3);
    b.slab_thickness_mm = j.value("slab_thickness_mm", b.slab_thickness_mm);
    b.tributary_area_m2 = j.value("tributary_area_m2", b.tributary_area_m2);
    b.p_g1_kn_m = j.value("p_g1_kn_m", b.p_g1_kn_m);
    b.p_g2_kn_m = j.value("p_g2_kn_m", b.p_g2_kn_m);
    b.p_q_ref_kn_m = j.value("p_q_ref_kn_m", b.p_q_ref_kn_m);
    b.gamma_g1 = j.value("gamma_g1", b.gamma_g1);
    b.gamma_g2 = j.value("gamma_g2", b.gamma_g2);
    b.gamma_q = j.value("gamma_q", b.gamma_q);
    b.zeta = j.value("zeta", b.zeta);
    b.mass_participation = j.value("mass_participation", b.mass_participation);
    b.bc_factor = j.value("bc_factor", b.bc_factor);
}

inline void to_json(nlohmann::json& j, const LiveLoadParams& p) {
    j = {{"a0_m2", p.a0_m2},
         {"a_m2", p.a_m2},
         {"kappa", p.kappa},
         {"m_lt_kn_m2", p.m_lt_kn_m2},
         {"sigma_v_kn_m2", p.sigma_v_kn_m2},
         {"sigma_u_kn_m2", p.sigma_u_kn_m2},
         {"inv_lambda_years", p.inv_lambda_years},
         {"m_st_kn_m2", p.m_st_kn_m2},
         {"sigma_bigu_kn_m2", p.sigma_bigu_kn_m2},
         {"inv_nu_years", p.inv_nu_years},
         {"d_p_days", p.d_p_days}};
    if (p.sigma_lt_override_kn_m2) j["sigma_lt_override_kn_m2"] = *p.sigma_lt_override_kn_m2;
    if (p.sigma_st_override_kn_m2) j["sigma_st_override_kn_m2"] = *p.sigma_st_override_kn_m2;
}
inline void from_json(const nlohmann::json& j, LiveLoadParams& p) {
    p.a0_m2 = j.value("a0_m2", p.a0_m2);
    p.a_m2 = j.value("a_m2", p.a_m2);
    p.kappa = j.value("kappa", p.kappa);
    p.m_lt_kn_m2 = j.value("m_lt_kn_m2", p.m_lt_kn_m2);
    p.sigma_v_kn_m2 = j.value("sigma_v_kn_m2", p.sigma_v_kn_m2);
    p.sigma_u_kn_m2 = j.value("sigma_u_kn_m2", p.sigma_u_kn_m2);
    p.inv_lambda_years = j.value("inv_lambda_years", p.inv_lambda_years);
    p.m_st_kn_m2 = j.value("m_st_kn_m2", p.m_st_kn_m2);
    p.sigma_bigu_kn_m2 = j.value("sigma_bigu_kn_m2", p.sigma_bigu_kn_m2);
    p.inv_nu_years = j.value("inv_nu_years", p.inv_nu_years);
    p.d_p_days = j.value("d_p_days", p.d_p_days);
    p.sigma_lt_override_kn_m2.reset();
    p.sigma_st_override_kn_m2.reset();
    if (j.contains("sigma_lt_override_kn_m2") && !j.at("sigma_lt_override_kn_m2").is_null())
        p.sigma_lt_override_kn_m2 = j.at("sigma_lt_override_kn_m2").get<double>();
    if (j.contains("sigma_st_override_kn_m2") && !j.at("sigma_st_override_kn_m2").is_null())
        p.sigma_st_override_kn_m2 = j.at("sigma_st_override_kn_m2").get<double>();
}

inline void to_json(nlohmann::json& j, const SyntheticWeatherParams& p) {
    j = {{"annual_mean_c", p.annual_mean_c},
         {"seasonal_amplitude_c", p.seasonal_amplitude_c},
         {"diurnal_amplitude_c", p.diurnal_amplitude_c},
         {"seasonal_phase_rad", p.seasonal_phase_rad},
         {"diurnal_phase_rad", p.diurnal_phase_rad},
         {"ar1_coefficient", p.ar1_coefficient},
         {"noise_std_c", p.noise_std_c},
         {"rh_base_pct", p.rh_base_pct},
         {"rh_temp_slope_pct_per_c", p.rh_temp_slope_pct_per_c},
         {"rh_ar1_coefficient", p.rh_ar1_coefficient},
         {"rh_noise_std_pct", p.rh_noise_std_pct}};
}
inline void from_json(const nlohmann::json& j, SyntheticWeatherParams& p) {
    p.annual_mean_c = j.value("annual_mean_c", p.annual_mean_c);
    p.seasonal_amplitude_c = j.value("seasonal_amplitude_c", p.seasonal_amplitude_c);
    p.diurnal_amplitude_c = j.value("diurnal_amplitude_c", p.diurnal_amplitude_c);
    p.seasonal_phase_rad = j.value("seasonal_phase_rad", p.seasonal_phase_rad);
    p.diurnal_phase_rad = j.value("diurnal_phase_rad", p.diurnal_phase_rad);
    p.ar1_coefficient = j.value("ar1_coefficient", p.ar1_coefficient);
    p.noise_std_c = j.value("noise_std_c", p.noise_std_c);
    p.rh_base_pct = j.value("rh_base_pct", p.rh_base_pct);
    p.rh_temp_slope_pct_per_c = j.value("rh_temp_slope_pct_per_c", p.rh_temp_slope_pct_per_c);
    p.rh_ar1_coefficient = j.value("rh_ar1_coefficient", p.rh_ar1_coefficient);
    p.rh_noise_std_pct = j.value("rh_noise_std_pct", p.rh_noise_std_pct);
}

inline void to_json(nlohmann::json& j, const EnvParams& p) {
    j = {{"alpha_t_per_c", p.alpha_t_per_c},
         {"e0_mpa", p.e0_mpa},
         {"e1", p.e1},
         {"e2", p.e2},
         {"e3", p.e3},
         {"e4", p.e4},
         {"temp_source", p.temp_source == TempSource::synthetic ? "synthetic" : "external_file"},
         {"synthetic", p.synth},
         {"external_csv", p.external_csv}};
}
inline void from_json(const nlohmann::json& j, EnvParams& p) {
    p.alpha_t_per_c = j.value("alpha_t_per_c", p.alpha_t_per_c);
    p.e0_mpa = j.value("e0_mpa", p.e0_mpa);
    p.e1 = j.value("e1", p.e1);
    p.e2 = j.value("e2", p.e2);
    p.e3 = j.value("e3", p.e3);
    p.e4 = j.value("e4", p.e4);
    if (j.contains("temp_source")) {
        const std::string src = j.at("temp_source").get<std::string>();
        if (src == "synthetic") p.temp_source = TempSource::synthetic;
        else if (src == "external_file") p.temp_source = TempSource::external_file;
        else throw std::invalid_argument("EnvParams: unknown temp_source '" + src + "'");
    }
    if (j.contains("synthetic")) j.at("synthetic").get_to(p.synth);
    p.external_csv = j.value("external_csv", p.external_csv);
}

inline void to_json(nlohmann::json& j, const CorrosionParams& p) {
    j = {{"anchor_um_per_year", p.anchor_um_per_year},
         {"b", p.b},
         {"c_tow_h", p.c_tow_h},
         {"d_exp", p.d_exp},
         {"e_so2", p.e_so2},
         {"f_exp", p.f_exp},
         {"g_cl", p.g_cl},
         {"h_exp", p.h_exp},
         {"j_per_c", p.j_per_c},
         {"t0_c", p.t0_c},
         {"so2_ug_m3", p.so2_ug_m3},
         {"cl_mg_m2_day", p.cl_mg_m2_day},
         {"exposure_start_index", p.exposure_start_index}};
    if (p.amplitude_um) j["amplitude_um"] = *p.amplitude_um;
}
inline void from_json(const nlohmann::json& j, CorrosionParams& p) {
    p.amplitude_um.reset();
    if (j.contains("amplitude_um") && !j.at("amplitude_um").is_null())
        p.amplitude_um = j.at("amplitude_um").get<double>();
    p.anchor_um_per_year = j.value("anchor_um_per_year", p.anchor_um_per_year);
    p.b = j.value("b", p.b);
    p.c_tow_h = j.value("c_tow_h", p.c_tow_h);
    p.d_exp = j.value("d_exp", p.d_exp);
    p.e_so2 = j.value("e_so2", p.e_so2);
    p.f_exp = j.value("f_exp", p.f_exp);
    p.g_cl = j.value("g_cl", p.g_cl);
    p.h_exp = j.value("h_exp", p.h_exp);
    p.j_per_c = j.value("j_per_c", p.j_per_c);
    p.t0_c = j.value("t0_c", p.t0_c);
    p.so2_ug_m3 = j.value("so2_ug_m3", p.so2_ug_m3);
    p.cl_mg_m2_day = j.value("cl_mg_m2_day", p.cl_mg_m2_day);
    p.exposure_start_index = j.value("exposure_start_index", p.exposure_start_index);
}

inline void to_json(nlohmann::json& j, const ExcitationParams& p) {
    j = {{"sample_rate_hz", p.sample_rate_hz},
         {"duration_s", p.duration_s},
         {"human_band_hz", {p.human_band_lo_hz, p.human_band_hi_hz}},
         {"human_sigma_range", {p.human_sigma_lo, p.human_sigma_hi}},
         {"traffic_band_hz", {p.traffic_band_lo_hz, p.traffic_band_hi_hz}},
         {"traffic_sigma_range", {p.traffic_sigma_lo, p.traffic_sigma_hi}},
         {"filter_order", p.filter_order},
         {"target_resolution_hz", p.target_resolution_hz},
         {"search_band_hz", {p.search_band_lo_hz, p.search_band_hi_hz}},
         {"warmup_s", p.warmup_s},
         {"frequency_tolerance", p.frequency_tolerance},
         {"max_attempts", p.max_attempts},
         {"measurement_noise", p.measurement_noise},
         {"measurement_noise_std_n", p.measurement_noise_std_n}};
}
inline void from_json(const nlohmann::json& j, ExcitationParams& p) {
    p.sample_rate_hz = j.value("sample_rate_hz", p.sample_rate_hz);
    p.duration_s = j.value("duration_s", p.duration_s);
    if (j.contains("human_band_hz")) {
        p.human_band_lo_hz = j.at("human_band_hz").at(0).get<double>();
        p.human_band_hi_hz = j.at("human_band_hz").at(1).get<double>();
    }
    if (j.contains("human_sigma_range")) {
        p.human_sigma_lo = j.at("human_sigma_range").at(0).get<double>();
        p.human_sigma_hi = j.at("human_sigma_range").at(1).get<double>();
    }
    if (j.contains("traffic_band_hz")) {
        p.traffic_band_lo_hz = j.at("traffic_band_hz").at(0).get<double>();
        p.traffic_band_hi_hz = j.at("traffic_band_hz").at(1).get<double>();
    }
    if (j.contains("traffic_sigma_range")) {
        p.traffic_sigma_lo = j.at("traffic_sigma_range").at(0).get<double>();
        p.traffic_sigma_hi = j.at("traffic_sigma_range").at(1).get<double>();
    }
    p.filter_order = j.value("filter_order", p.filter_order);
    p.target_resolution_hz = j.value("target_resolution_hz", p.target_resolution_hz);
    if (j.contains("search_band_hz")) {
        p.search_band_lo_hz = j.at("search_band_hz").at(0).get<double>();
        p.search_band_hi_hz = j.at("search_band_hz").at(1).get<double>();
    }
    p.warmup_s = j.value("warmup_s", p.warmup_s);
    p.frequency_tolerance = j.value("frequency_tolerance", p.frequency_tolerance);
    p.max_attempts = j.value("max_attempts", p.max_attempts);
    p.measurement_noise = j.value("measurement_noise", p.measurement_noise);
    p.measurement_noise_std_n = j.value("measurement_noise_std_n", p.measurement_noise_std_n);
}

inline void to_json(nlohmann::json& j, const FaultClassRanges& r) {
    j = {{"drift_s", {r.drift_s_lo, r.drift_s_hi}},
         {"bias_s", {r.bias_s_lo, r.bias_s_hi}},
         {"spike_s", {r.spike_s_lo, r.spike_s_hi}},
         {"spike_count_factor", {r.spike_count_lo, r.spike_count_hi}},
         {"gain_s", {r.gain_s_lo, r.gain_s_hi}},
         {"noise_s", {r.noise_s_lo, r.noise_s_hi}},
         {"missing_start_fraction", {r.missing_start_lo, r.missing_start_hi}},
         {"cable_f_hz", {r.cable_f_lo, r.cable_f_hi}},
         {"cable_s", {r.cable_s_lo, r.cable_s_hi}},
         {"cable_lambda", {r.cable_lambda_lo, r.cable_lambda_hi}},
         {"cable_temp_duration_fraction", {r.cable_temp_duration_lo, r.cable_temp_duration_hi}}};
}
inline void from_json(const nlohmann::json& j, FaultClassRanges& r) {
    const auto pair = [&j](const char* key, double& lo, double& hi) {
        if (!j.contains(key)) return;
        lo = j.at(key).at(0).get<double>();
        hi = j.at(key).at(1).get<double>();
    };
    pair("drift_s", r.drift_s_lo, r.drift_s_hi);
    pair("bias_s", r.bias_s_lo, r.bias_s_hi);
    pair("spike_s", r.spike_s_lo, r.spike_s_hi);
    pair("spike_count_factor", r.spike_count_lo, r.spike_count_hi);
    pair("gain_s", r.gain_s_lo, r.gain_s_hi);
    pair("noise_s", r.noise_s_lo, r.noise_s_hi);
    pair("missing_start_fraction", r.missing_start_lo, r.missing_start_hi);
    pair("cable_f_hz", r.cable_f_lo, r.cable_f_hi);
    pair("cable_s", r.cable_s_lo, r.cable_s_hi);
    pair("cable_lambda", r.cable_lambda_lo, r.cable_lambda_hi);
    pair("cable_temp_duration_fraction", r.cable_temp_duration_lo, r.cable_temp_duration_hi);
}

inline void to_json(nlohmann::json& j, const FaultPolicy& p) {
    std::vector<std::string> names;
    for (FaultClass c : p.classes) names.push_back(fault_class_name(c));
    j = {{"classes", names},
         {"contamination_fraction", p.contamination_fraction},
         {"run_length_min", p.run_length_min},
         {"run_length_max", p.run_length_max},
         {"ranges", p.ranges}};
    if (p.subset_target) j["subset_target"] = *p.subset_target;
}
inline void from_json(const nlohmann::json& j, FaultPolicy& p) {
    if (j.contains("classes")) {
        p.classes.clear();
        for (const auto& name : j.at("classes")) p.classes.push_back(parse_fault_class(name));
    }
    p.contamination_fraction = j.value("contamination_fraction", p.contamination_fraction);
    p.subset_target.reset();
    if (j.contains("subset_target") && !j.at("subset_target").is_null())
        p.subset_target = j.at("subset_target").get<std::size_t>();
    p.run_length_min = j.value("run_length_min", p.run_length_min);
    p.run_length_max = j.value("run_length_max", p.run_length_max);
    if (j.contains("ranges")) j.at("ranges").get_to(p.ranges);
}

inline void to_json(nlohmann::json& j, const ScenarioConfig& c) {
    j = {{"grid", c.grid},
         {"beam", c.beam},
         {"live_load", c.live_load},
         {"environment", c.env},
         {"corrosion", c.corrosion},
         {"excitation", c.excitation},
         {"d4_policy", c.d4_policy},
         {"d5_policy", c.d5_policy},
         {"damage_onset_index", c.damage_onset_index},
         {"calibration_year", c.calibration_year},
         {"master_seed", c.master_seed},
         {"n_workers", c.n_workers}};
}
inline void from_json(const nlohmann::json& j, ScenarioConfig& c) {
    if (j.contains("grid")) j.at("grid").get_to(c.grid);
    if (j.contains("beam")) j.at("beam").get_to(c.beam);
    if (j.contains("live_load")) j.at("live_load").get_to(c.live_load);
    if (j.contains("environment")) j.at("environment").get_to(c.env);
    if (j.contains("corrosion")) j.at("corrosion").get_to(c.corrosion);
    if (j.contains("excitation")) j.at("excitation").get_to(c.excitation);
    if (j.contains("d4_policy")) j.at("d4_policy").get_to(c.d4_policy);
    if (j.contains("d5_policy")) j.at("d5_policy").get_to(c.d5_policy);
    c.damage_onset_index = j.value("damage_onset_index", c.damage_onset_index);
    c.calibration_year = j.value("calibration_year", c.calibration_year);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.n_workers = j.value("n_workers", c.n_workers);
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j.get<ScenarioConfig>();
}

inline void save_config(const ScenarioConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_config: cannot open " + path);
    out << nlohmann::json(config).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// realization

/// Everything realized once per run and shared read-only by all workers:
/// grid, weather, modulus series, load history, corrosion calibration.
struct ScenarioRealization {
    ScenarioConfig config;
    TimeGrid grid;
    EnvSeries env;
    std::vector<double> e_mpa;  // E(T_i) per acquisition
    LoadProcess load;
    YearlyAggregates calibration;
    double corrosion_amplitude_um = 0.0;

    std::size_t n_acquisitions() const { return grid.size(); }
    std::size_t damage_onset() const {
        return std::min(config.damage_onset_index, grid.size());
    }
};

inline ScenarioRealization realize(const ScenarioConfig& config) {
    ScenarioRealization r;
    r.config = config;
    r.grid = build_time_grid(config.grid.start_year, config.grid.start_month, config.grid.start_day,
                             config.grid.n_years);

    if (config.env.temp_source == TempSource::synthetic) {
        r.env = synth_weather(r.grid, config.env.synth,
                              rng::derive_seed(config.master_seed, rng::Stream::environment));
    } else {
        r.env = load_weather_csv(config.env.external_csv, r.grid);
    }

    r.e_mpa.resize(r.grid.size());
    for (std::size_t i = 0; i < r.grid.size(); ++i)
        r.e_mpa[i] = youngs_modulus_mpa(r.env.temperature_c[i], config.env);

    const double width_m = config.beam.tributary_width_m();
    auto lt = to_line_load(
        realize_sustained(r.grid.size(), config.live_load,
                          rng::derive_seed(config.master_seed, rng::Stream::sustained_load)),
        width_m);
    auto st_raw =
        realize_intermittent(r.grid.size(), config.live_load,
                             rng::derive_seed(config.master_seed, rng::Stream::intermittent_load));
    auto st = to_line_load(st_raw.series_kn_m2, width_m);
    for (SpikeEvent& ev : st_raw.events) ev.intensity_kn_m2 *= width_m;
    r.load = combine_sls(config.beam.p_g_kn_m(), std::move(lt), std::move(st), std::move(st_raw.events));

    r.calibration = yearly_aggregates(r.env, r.grid, config.calibration_year);
    r.corrosion_amplitude_um = resolved_corrosion_amplitude(config.corrosion, r.calibration);
    return r;
}

}  // namespace shmbench
