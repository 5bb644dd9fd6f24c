#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shmbench/damage.hpp"
#include "shmbench/faults.hpp"
#include "shmbench/scenario.hpp"
#include "shmbench/structure.hpp"

namespace shmbench {

enum class SubDataset { d1, d2_1, d2_2, d2_3, d3_1, d3_2, d3_3, d4, d5 };

inline const std::array<SubDataset, 9>& all_subdatasets() {
    static const std::array<SubDataset, 9> v{
        SubDataset::d1,   SubDataset::d2_1, SubDataset::d2_2, SubDataset::d2_3, SubDataset::d3_1,
        SubDataset::d3_2, SubDataset::d3_3, SubDataset::d4,   SubDataset::d5,
    };
    return v;
}

inline std::string subdataset_name(SubDataset s) {
    switch (s) {
        case SubDataset::d1: return "D1";
        case SubDataset::d2_1: return "D2.1";
        case SubDataset::d2_2: return "D2.2";
        case SubDataset::d2_3: return "D2.3";
        case SubDataset::d3_1: return "D3.1";
        case SubDataset::d3_2: return "D3.2";
        case SubDataset::d3_3: return "D3.3";
        case SubDataset::d4: return "D4";
        case SubDataset::d5: return "D5";
    }
    throw std::invalid_argument("subdataset_name: unknown code");
}

/// Digits after the dash in the file name: sub-dataset index plus the
/// alternative digit when one exists.
inline std::string subdataset_suffix(SubDataset s) {
    switch (s) {
        case SubDataset::d1: return "1";
        case SubDataset::d2_1: return "21";
        case SubDataset::d2_2: return "22";
        case SubDataset::d2_3: return "23";
        case SubDataset::d3_1: return "31";
        case SubDataset::d3_2: return "32";
        case SubDataset::d3_3: return "33";
        case SubDataset::d4: return "4";
        case SubDataset::d5: return "5";
    }
    throw std::invalid_argument("subdataset_suffix: unknown code");
}

inline SubDataset parse_subdataset(const std::string& text) {
    for (SubDataset s : all_subdatasets())
        if (subdataset_name(s) == text || subdataset_suffix(s) == text) return s;
    throw std::invalid_argument("parse_subdataset: unknown sub-dataset '" + text + "'");
}

/// `accXXXXX-YZ.h5` with a five-digit global acquisition index.
inline std::string acquisition_filename(std::size_t index, SubDataset s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "acc%05zu-%s.h5", index, subdataset_suffix(s).c_str());
    return buf;
}

/// Declarative content of one sub-dataset: its index window, the damage
/// series it rides on, and the contamination policy if any. The damage
/// series span the full grid so that pre-window rows equal the undamaged
/// history.
struct SubDatasetSpec {
    SubDataset code = SubDataset::d1;
    std::size_t window_begin = 0;
    std::size_t window_end = 0;
    std::vector<double> fast_rate;
    std::vector<double> slow_depth_mm;
    std::optional<FaultPolicy> fault_policy;

    std::size_t window_count() const { return window_end - window_begin; }
};

inline SubDatasetSpec make_subdataset_spec(SubDataset code, const ScenarioRealization& r) {
    SubDatasetSpec spec;
    spec.code = code;
    const std::size_t n = r.n_acquisitions();
    const std::size_t onset = r.damage_onset();
    spec.window_begin = (code == SubDataset::d1) ? 0 : onset;
    spec.window_end = n;
    spec.fast_rate.assign(n, 0.0);
    spec.slow_depth_mm.assign(n, 0.0);

    CorrosionParams corr = r.config.corrosion;
    corr.amplitude_um = r.corrosion_amplitude_um;
    corr.exposure_start_index = onset;  // FAST and SLOW share one damage window

    switch (code) {
        case SubDataset::d1:
        case SubDataset::d4:
            break;
        case SubDataset::d2_1:
            spec.fast_rate = fast_schedule(FastVariant::single_step, r.grid, onset);
            break;
        case SubDataset::d2_2:
            spec.fast_rate = fast_schedule(FastVariant::monthly_ramp, r.grid, onset);
            break;
        case SubDataset::d2_3:
            spec.fast_rate = fast_schedule(FastVariant::geometric, r.grid, onset);
            break;
        case SubDataset::d3_1:
            spec.slow_depth_mm = slow_schedule_mm(SlowLevel::ageing, r.grid, corr, r.calibration);
            break;
        case SubDataset::d3_2:
            spec.slow_depth_mm = slow_schedule_mm(SlowLevel::accelerated_10x, r.grid, corr, r.calibration);
            break;
        case SubDataset::d3_3:
            spec.slow_depth_mm = slow_schedule_mm(SlowLevel::accelerated_20x, r.grid, corr, r.calibration);
            break;
        case SubDataset::d5:
            spec.fast_rate = fast_schedule(FastVariant::geometric, r.grid, onset);
            spec.slow_depth_mm = slow_schedule_mm(SlowLevel::accelerated_20x, r.grid, corr, r.calibration);
            break;
    }

    if (code == SubDataset::d4) spec.fault_policy = r.config.d4_policy;
    if (code == SubDataset::d5) spec.fault_policy = r.config.d5_policy;
    return spec;
}

inline std::vector<SubDatasetSpec> full_catalog(const ScenarioRealization& r) {
    std::vector<SubDatasetSpec> specs;
    specs.reserve(all_subdatasets().size());
    for (SubDataset code : all_subdatasets()) specs.push_back(make_subdataset_spec(code, r));
    return specs;
}

// ---------------------------------------------------------------------------
// per-acquisition state

/// Frozen covariate vector of acquisition i under one sub-dataset.
struct CovariateRecord {
    std::size_t index = 0;
    double temperature_c = 0.0;
    double p_des_kn_m = 0.0;
    double sigma_human = 0.0;
    double sigma_traffic = 0.0;
    double d_fast = 0.0;
    double d_slow_mm = 0.0;
    std::optional<FaultClass> sfm{};
    bool epsilon_flag = false;

    bool operator==(const CovariateRecord&) const = default;
};

inline CovariateRecord covariates_for(std::size_t i, const ScenarioRealization& r,
                                      const SubDatasetSpec& spec,
                                      const ContaminationPlan* plan = nullptr) {
    if (i >= r.n_acquisitions())
        throw std::out_of_range("covariates_for: index " + std::to_string(i) + " outside grid");
    CovariateRecord rec;
    rec.index = i;
    rec.temperature_c = r.env.temperature_c[i];
    rec.p_des_kn_m = r.load.p_des_kn_m[i];
    const SigmaDraw sigma = sigmas_for(r.config.excitation, r.config.master_seed, i);
    rec.sigma_human = sigma.human;
    rec.sigma_traffic = sigma.traffic;
    rec.d_fast = spec.fast_rate.empty() ? 0.0 : spec.fast_rate[i];
    rec.d_slow_mm = spec.slow_depth_mm.empty() ? 0.0 : spec.slow_depth_mm[i];
    rec.epsilon_flag = r.config.excitation.measurement_noise;
    if (plan) {
        const auto it = plan->assignments.find(i);
        if (it != plan->assignments.end()) rec.sfm = it->second.cls;
    }
    return rec;
}

struct KmRow {
    double k_n_m = 0.0;
    double m_kg = 0.0;
};

/// Equivalent SDOF pair for acquisition i:
///   k from E(T_i), I(d_slow,i) and the FAST decay rate,
///   m from the acting load minus the corroded volume.
inline KmRow km_for(std::size_t i, const ScenarioRealization& r, const SubDatasetSpec& spec) {
    const BeamModel& beam = r.config.beam;
    const double d_slow = spec.slow_depth_mm.empty() ? 0.0 : spec.slow_depth_mm[i];
    const double r_fast = spec.fast_rate.empty() ? 0.0 : spec.fast_rate[i];
    const SectionProperties section = corroded_section(beam.section, d_slow);
    KmRow row;
    row.k_n_m = equivalent_stiffness_n_m(r.e_mpa[i], section.inertia_mm4, beam.span_mm, r_fast,
                                         beam.bc_factor);
    const double mass_loss =
        corrosion_mass_loss_kg(beam.section, d_slow, beam.span_mm, beam.density_steel_kg_m3);
    row.m_kg = equivalent_mass_kg(r.load.p_des_kn_m[i], beam.span_mm, mass_loss,
                                  beam.mass_participation);
    return row;
}

/// The n_a x 2 matrix of Algorithm-style worker inputs.
inline std::vector<KmRow> build_km_matrix(const ScenarioRealization& r, const SubDatasetSpec& spec) {
    std::vector<KmRow> km(r.n_acquisitions());
    for (std::size_t i = 0; i < km.size(); ++i) km[i] = km_for(i, r, spec);
    return km;
}

/// Midspan deflection of acquisition i in mm; damage enters through the
/// corroded inertia and the FAST rate, exactly as in the stiffness path.
inline double deflection_mm_for(std::size_t i, const ScenarioRealization& r,
                                const SubDatasetSpec& spec) {
    const BeamModel& beam = r.config.beam;
    const double d_slow = spec.slow_depth_mm.empty() ? 0.0 : spec.slow_depth_mm[i];
    const double r_fast = spec.fast_rate.empty() ? 0.0 : spec.fast_rate[i];
    const SectionProperties section = corroded_section(beam.section, d_slow);
    const double delta_ud = midspan_deflection_mm(r.load.p_des_kn_m[i], r.e_mpa[i],
                                                  section.inertia_mm4, beam.span_mm, beam.bc_factor);
    return delta_ud / (1.0 - r_fast);
}

inline std::vector<double> deflection_series(const ScenarioRealization& r, const SubDatasetSpec& spec) {
    std::vector<double> out(r.n_acquisitions());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = deflection_mm_for(i, r, spec);
    return out;
}

/// Seed of acquisition i's simulate-retry loop; shared by every sub-dataset
/// so damaged corpora are counterfactuals of the same excitation history.
inline std::uint64_t acquisition_seed(std::uint64_t master_seed, std::size_t index) {
    return rng::derive_seed(master_seed, rng::Stream::excitation, index);
}

}  // namespace shmbench
