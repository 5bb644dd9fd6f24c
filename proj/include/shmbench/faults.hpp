#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shmbench/rng.hpp"

namespace shmbench {

enum class FaultClass {
    drift,
    bias,
    spikes,
    gain,
    noise,
    missing,
    cable_temporary,
    cable_permanent,
};

inline const std::vector<FaultClass>& all_fault_classes() {
    static const std::vector<FaultClass> v{
        FaultClass::drift,  FaultClass::bias,    FaultClass::spikes,
        FaultClass::gain,   FaultClass::noise,   FaultClass::missing,
        FaultClass::cable_temporary, FaultClass::cable_permanent,
    };
    return v;
}

inline std::string fault_class_name(FaultClass c) {
    switch (c) {
        case FaultClass::drift: return "drift";
        case FaultClass::bias: return "bias";
        case FaultClass::spikes: return "spikes";
        case FaultClass::gain: return "gain";
        case FaultClass::noise: return "noise";
        case FaultClass::missing: return "missing";
        case FaultClass::cable_temporary: return "cable_temporary";
        case FaultClass::cable_permanent: return "cable_permanent";
    }
    throw std::invalid_argument("fault_class_name: unknown class");
}

inline FaultClass parse_fault_class(const std::string& s) {
    for (FaultClass c : all_fault_classes())
        if (fault_class_name(c) == s) return c;
    throw std::invalid_argument("parse_fault_class: unknown class '" + s + "'");
}

/// Only spikes and the detach-and-reattach case hit a single acquisition;
/// everything else persists over a run of consecutive acquisitions.
inline bool is_prolonged(FaultClass c) {
    return c != FaultClass::spikes && c != FaultClass::cable_temporary;
}

// ---------------------------------------------------------------------------
// injectors

/// Exponentially settling offset: a + s_D exp(-tau/(l_s/10)) + s_D, with tau
/// counted in seconds from the window start. Offset is 2 s_D at onset and
/// settles to s_D.
inline std::vector<float> inject_drift(const std::vector<float>& a, double s_d, std::size_t tau_start,
                                       std::size_t tau_end, double sample_rate_hz, double record_s) {
    if (tau_end > a.size() || tau_start > tau_end)
        throw std::out_of_range("inject_drift: window out of bounds");
    std::vector<float> out = a;
    const double tc = record_s / 10.0;
    for (std::size_t i = tau_start; i < tau_end; ++i) {
        const double tau = static_cast<double>(i - tau_start) / sample_rate_hz;
        out[i] = static_cast<float>(static_cast<double>(a[i]) + s_d * std::exp(-tau / tc) + s_d);
    }
    return out;
}

inline std::vector<float> inject_bias(const std::vector<float>& a, double s_b, std::size_t tau_start,
                                      std::size_t tau_end) {
    if (tau_end > a.size() || tau_start > tau_end)
        throw std::out_of_range("inject_bias: window out of bounds");
    std::vector<float> out = a;
    for (std::size_t i = tau_start; i < tau_end; ++i)
        out[i] = static_cast<float>(static_cast<double>(a[i]) + s_b);
    return out;
}

/// Additive amplitude s_S on `count` isolated random samples.
inline std::vector<float> inject_spikes(const std::vector<float>& a, double s_s, std::size_t count,
                                        rng::Generator& gen) {
    if (count > a.size()) throw std::invalid_argument("inject_spikes: count exceeds signal length");
    std::vector<float> out = a;
    std::set<std::size_t> positions;
    while (positions.size() < count) positions.insert(gen.uniform_index(a.size()));
    for (std::size_t i : positions) out[i] = static_cast<float>(static_cast<double>(a[i]) + s_s);
    return out;
}

inline std::vector<float> inject_gain(const std::vector<float>& a, double s_g, std::size_t tau_start,
                                      std::size_t tau_end) {
    if (tau_end > a.size() || tau_start > tau_end)
        throw std::out_of_range("inject_gain: window out of bounds");
    std::vector<float> out = a;
    for (std::size_t i = tau_start; i < tau_end; ++i)
        out[i] = static_cast<float>(static_cast<double>(a[i]) * s_g);
    return out;
}

inline std::vector<float> inject_noise(const std::vector<float>& a, double s_n, std::size_t tau_start,
                                       std::size_t tau_end, rng::Generator& gen) {
    if (tau_end > a.size() || tau_start > tau_end)
        throw std::out_of_range("inject_noise: window out of bounds");
    std::vector<float> out = a;
    for (std::size_t i = tau_start; i < tau_end; ++i)
        out[i] = static_cast<float>(static_cast<double>(a[i]) + gen.normal(0.0, s_n));
    return out;
}

/// Gap marker: quiet NaNs, representable in the stored 32-bit records.
inline std::vector<float> inject_missing(const std::vector<float>& a, std::size_t tau_start,
                                         std::size_t tau_end) {
    if (tau_end > a.size() || tau_start > tau_end)
        throw std::out_of_range("inject_missing: window out of bounds");
    std::vector<float> out = a;
    for (std::size_t i = tau_start; i < tau_end; ++i)
        out[i] = std::numeric_limits<float>::quiet_NaN();
    return out;
}

/// From tau_start the record is REPLACED by the decaying detachment tone
/// s_C sin(2 pi f_C tau) exp(-lambda_C tau); the original resumes at tau_end
/// (temporary reattachment) or never (permanent, tau_end = record length).
/// time_offset_s shifts the tone's clock for acquisitions later in a
/// permanent-detachment run.
inline std::vector<float> inject_cable_detachment(const std::vector<float>& a, double s_c, double f_c,
                                                  double lambda_c, std::size_t tau_start,
                                                  std::size_t tau_end, double sample_rate_hz,
                                                  double time_offset_s = 0.0) {
    if (tau_end > a.size() || tau_start > tau_end)
        throw std::out_of_range("inject_cable_detachment: window out of bounds");
    std::vector<float> out = a;
    for (std::size_t i = tau_start; i < tau_end; ++i) {
        const double tau = static_cast<double>(i - tau_start) / sample_rate_hz + time_offset_s;
        out[i] = static_cast<float>(s_c * std::sin(2.0 * M_PI * f_c * tau) * std::exp(-lambda_c * tau));
    }
    return out;
}

// ---------------------------------------------------------------------------
// contamination scheduling

/// Table-6 parameter ranges, normalized to [min, max].
struct FaultClassRanges {
    double drift_s_lo = 1e-3, drift_s_hi = 2e-3;        // m/s^2
    double bias_s_lo = 1.2, bias_s_hi = 1.7;            // m/s^2
    double spike_s_lo = 5e-3, spike_s_hi = 5e-2;        // m/s^2
    double spike_count_lo = 0.1, spike_count_hi = 0.2;  // x sample rate
    double gain_s_lo = 1.1, gain_s_hi = 3.1;
    double noise_s_lo = 1e-5, noise_s_hi = 1e-3;           // m/s^2
    double missing_start_lo = 0.2, missing_start_hi = 0.8; // fraction of record
    double cable_f_lo = 0.5, cable_f_hi = 1.5;             // Hz
    double cable_s_lo = 0.05, cable_s_hi = 0.2;            // m/s^2
    double cable_lambda_lo = 0.02, cable_lambda_hi = 0.05; // 1/s
    double cable_temp_duration_lo = 0.1, cable_temp_duration_hi = 0.5;  // fraction of record

    bool operator==(const FaultClassRanges&) const = default;
};

struct FaultPolicy {
    std::vector<FaultClass> classes = all_fault_classes();
    double contamination_fraction = 0.5;
    /// When set, the sub-dataset is first restricted to this many
    /// acquisitions sampled from the window (the D4 construction).
    std::optional<std::size_t> subset_target{};
    std::size_t run_length_min = 5;
    std::size_t run_length_max = 25;
    FaultClassRanges ranges{};

    void validate() const {
        if (classes.empty()) throw std::invalid_argument("FaultPolicy: no classes");
        if (contamination_fraction < 0.0 || contamination_fraction > 1.0)
            throw std::invalid_argument("FaultPolicy: fraction must be in [0, 1]");
        if (run_length_min < 1 || run_length_max < run_length_min)
            throw std::invalid_argument("FaultPolicy: bad run length bounds");
    }

    bool operator==(const FaultPolicy&) const = default;
};

/// Fully resolved fault applied to one acquisition. Parameter slots depend
/// on the class; noise_seed drives spike placement and noise sequences.
struct FaultInstance {
    FaultClass cls{};
    std::size_t tau_start = 0;
    std::size_t tau_end = 0;
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
    std::size_t spike_count = 0;
    double time_offset_s = 0.0;
    std::uint64_t noise_seed = 0;
};

struct FaultLabel {
    std::size_t acquisition_index;
    FaultClass cls;
    std::string param_summary;
    double t_start_s;
    double t_end_s;
};

struct ContaminationPlan {
    std::vector<std::size_t> subset;                 // acquisitions in the sub-dataset, sorted
    std::map<std::size_t, FaultInstance> assignments;  // acquisition index -> fault
    std::vector<FaultLabel> labels;                  // one per contaminated acquisition
};

namespace detail {

inline std::string format_param(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

inline FaultInstance draw_fault_instance(FaultClass cls, const FaultClassRanges& r,
                                         std::size_t n_samples, double sample_rate_hz,
                                         rng::Generator& gen) {
    FaultInstance fi;
    fi.cls = cls;
    fi.tau_end = n_samples;
    fi.noise_seed = rng::mix64(gen.raw());
    switch (cls) {
        case FaultClass::drift:
            fi.p1 = gen.uniform(r.drift_s_lo, r.drift_s_hi);
            break;
        case FaultClass::bias:
            fi.p1 = gen.uniform(r.bias_s_lo, r.bias_s_hi);
            break;
        case FaultClass::spikes: {
            fi.p1 = gen.uniform(r.spike_s_lo, r.spike_s_hi);
            const long lo = std::lround(r.spike_count_lo * sample_rate_hz);
            const long hi = std::lround(r.spike_count_hi * sample_rate_hz);
            fi.spike_count = static_cast<std::size_t>(gen.uniform_int(lo, hi));
            fi.tau_start = 0;
            break;
        }
        case FaultClass::gain:
            fi.p1 = gen.uniform(r.gain_s_lo, r.gain_s_hi);
            break;
        case FaultClass::noise:
            fi.p1 = gen.uniform(r.noise_s_lo, r.noise_s_hi);
            break;
        case FaultClass::missing:
            fi.tau_start = static_cast<std::size_t>(
                gen.uniform(r.missing_start_lo, r.missing_start_hi) * static_cast<double>(n_samples));
            break;
        case FaultClass::cable_temporary: {
            fi.p1 = gen.uniform(r.cable_s_lo, r.cable_s_hi);
            fi.p2 = gen.uniform(r.cable_f_lo, r.cable_f_hi);
            fi.p3 = gen.uniform(r.cable_lambda_lo, r.cable_lambda_hi);
            const double frac = gen.uniform(r.cable_temp_duration_lo, r.cable_temp_duration_hi);
            const auto duration = static_cast<std::size_t>(frac * static_cast<double>(n_samples));
            fi.tau_start = gen.uniform_index(n_samples - duration);
            fi.tau_end = fi.tau_start + duration;
            break;
        }
        case FaultClass::cable_permanent:
            fi.p1 = gen.uniform(r.cable_s_lo, r.cable_s_hi);
            fi.p2 = gen.uniform(r.cable_f_lo, r.cable_f_hi);
            fi.p3 = gen.uniform(r.cable_lambda_lo, r.cable_lambda_hi);
            break;
    }
    return fi;
}

inline std::string summarize(const FaultInstance& fi) {
    std::ostringstream os;
    os.precision(4);
    switch (fi.cls) {
        case FaultClass::drift: os << "s_D=" << fi.p1; break;
        case FaultClass::bias: os << "s_B=" << fi.p1; break;
        case FaultClass::spikes: os << "s_S=" << fi.p1 << ";count=" << fi.spike_count; break;
        case FaultClass::gain: os << "s_G=" << fi.p1; break;
        case FaultClass::noise: os << "s_N=" << fi.p1; break;
        case FaultClass::missing: os << "gap"; break;
        case FaultClass::cable_temporary:
        case FaultClass::cable_permanent:
            os << "s_C=" << fi.p1 << ";f_C=" << fi.p2 << ";lambda_C=" << fi.p3;
            if (fi.time_offset_s > 0.0) os << ";offset_s=" << fi.time_offset_s;
            break;
    }
    return os.str();
}

}  // namespace detail

/// Builds the deterministic contamination plan: samples the sub-dataset
/// subset (D4 only), splits the contamination budget equally between the
/// enabled classes, places prolonged classes as contiguous runs of 5-25
/// positions with run-coherent parameters, single-acquisition classes as
/// isolated positions. Runs start at a random in-record time; later
/// acquisitions of the same run are faulted from their first sample.
inline ContaminationPlan plan_contamination(const std::vector<std::size_t>& window_indices,
                                            const FaultPolicy& policy, std::size_t n_samples,
                                            double sample_rate_hz, std::uint64_t seed) {
    policy.validate();
    ContaminationPlan plan;
    rng::Generator gen(seed);

    // sub-dataset membership
    if (policy.subset_target && *policy.subset_target < window_indices.size()) {
        std::vector<std::size_t> pool = window_indices;
        for (std::size_t k = 0; k < *policy.subset_target; ++k) {
            const std::size_t j = k + gen.uniform_index(pool.size() - k);
            std::swap(pool[k], pool[j]);
        }
        pool.resize(*policy.subset_target);
        std::sort(pool.begin(), pool.end());
        plan.subset = std::move(pool);
    } else {
        plan.subset = window_indices;
        std::sort(plan.subset.begin(), plan.subset.end());
    }

    const std::size_t n_subset = plan.subset.size();
    const std::size_t budget =
        static_cast<std::size_t>(policy.contamination_fraction * static_cast<double>(n_subset));
    const std::size_t per_class = budget / policy.classes.size();
    if (budget > 0 && per_class == 0)
        throw std::invalid_argument("plan_contamination: policy infeasible, budget below one per class");

    std::vector<bool> occupied(n_subset, false);
    const double dt = 1.0 / sample_rate_hz;

    // all positions where a free block of length run_len can start
    const auto valid_starts = [&occupied, n_subset](std::size_t run_len) {
        std::vector<std::size_t> starts;
        std::size_t free_run = 0;
        for (std::size_t p = 0; p < n_subset; ++p) {
            free_run = occupied[p] ? 0 : free_run + 1;
            if (free_run >= run_len) starts.push_back(p + 1 - run_len);
        }
        return starts;
    };

    for (FaultClass cls : policy.classes) {
        std::size_t remaining = per_class;
        while (remaining > 0) {
            std::size_t run_len = 1;
            if (is_prolonged(cls)) {
                run_len = static_cast<std::size_t>(gen.uniform_int(
                    static_cast<long>(policy.run_length_min), static_cast<long>(policy.run_length_max)));
                run_len = std::min(run_len, remaining);
            }

            // place uniformly among the feasible starts, shrinking the run
            // when the free gaps have become too fragmented
            std::vector<std::size_t> starts = valid_starts(run_len);
            while (starts.empty() && run_len > 1) {
                --run_len;
                starts = valid_starts(run_len);
            }
            if (starts.empty())
                throw std::runtime_error("plan_contamination: window fully occupied before the "
                                         "contamination budget was met");
            const std::size_t start = starts[gen.uniform_index(starts.size())];

            FaultInstance proto =
                detail::draw_fault_instance(cls, policy.ranges, n_samples, sample_rate_hz, gen);
            if (is_prolonged(cls) && cls != FaultClass::missing) {
                // random onset inside the first affected record
                proto.tau_start = gen.uniform_index(static_cast<std::size_t>(0.8 * n_samples) + 1);
            }

            for (std::size_t j = 0; j < run_len; ++j) {
                const std::size_t pos = start + j;
                occupied[pos] = true;
                FaultInstance fi = proto;
                if (j > 0) {
                    fi.tau_start = 0;  // fault persists across the run
                    if (cls == FaultClass::cable_permanent) {
                        // tone clock keeps running between hourly acquisitions
                        fi.time_offset_s = static_cast<double>(j) * 3600.0 -
                                           static_cast<double>(proto.tau_start) * dt;
                    }
                    fi.noise_seed = rng::mix64(proto.noise_seed + j);
                }
                plan.assignments[plan.subset[pos]] = fi;
            }
            remaining -= run_len;
        }
    }

    for (const auto& [idx, fi] : plan.assignments) {
        FaultLabel lbl;
        lbl.acquisition_index = idx;
        lbl.cls = fi.cls;
        lbl.param_summary = detail::summarize(fi);
        lbl.t_start_s = static_cast<double>(fi.tau_start) * dt;
        lbl.t_end_s = static_cast<double>(fi.tau_end) * dt;
        plan.labels.push_back(lbl);
    }
    return plan;
}

/// Applies one resolved fault to a record.
inline std::vector<float> apply_fault(const std::vector<float>& samples, const FaultInstance& fi,
                                      double sample_rate_hz) {
    const double record_s = static_cast<double>(samples.size()) / sample_rate_hz;
    rng::Generator gen(fi.noise_seed);
    switch (fi.cls) {
        case FaultClass::drift:
            return inject_drift(samples, fi.p1, fi.tau_start, fi.tau_end, sample_rate_hz, record_s);
        case FaultClass::bias:
            return inject_bias(samples, fi.p1, fi.tau_start, fi.tau_end);
        case FaultClass::spikes:
            return inject_spikes(samples, fi.p1, fi.spike_count, gen);
        case FaultClass::gain:
            return inject_gain(samples, fi.p1, fi.tau_start, fi.tau_end);
        case FaultClass::noise:
            return inject_noise(samples, fi.p1, fi.tau_start, fi.tau_end, gen);
        case FaultClass::missing:
            return inject_missing(samples, fi.tau_start, fi.tau_end);
        case FaultClass::cable_temporary:
        case FaultClass::cable_permanent:
            return inject_cable_detachment(samples, fi.p1, fi.p2, fi.p3, fi.tau_start, fi.tau_end,
                                           sample_rate_hz, fi.time_offset_s);
    }
    throw std::invalid_argument("apply_fault: unknown class");
}

}  // namespace shmbench
