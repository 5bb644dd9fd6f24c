#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "shmbench/excitation.hpp"
#include "shmbench/hdf5_io.hpp"
#include "shmbench/manifest.hpp"
#include "shmbench/scenario.hpp"
#include "shmbench/subdataset.hpp"

namespace shmbench {

struct GenerationOptions {
    std::filesystem::path out_dir;
    int workers = 0;                     // 0: config value, else hardware
    std::size_t max_index = SIZE_MAX;    // desk-scale cap on the global index
};

struct GenerationReport {
    std::map<std::string, std::size_t> files_per_subdataset;
    std::size_t total_files = 0;
    std::size_t rejected_records = 0;  // kept as best-of-N, accepted = false
    double total_attempts = 0.0;
    double mean_rms_m_s2 = 0.0;  // comfort plausibility, reported not asserted
    double elapsed_s = 0.0;
    std::filesystem::path manifest_path;
};

namespace detail {

inline int resolve_workers(const GenerationOptions& options, const ScenarioConfig& config) {
    if (options.workers > 0) return options.workers;
    if (config.n_workers > 0) return config.n_workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path.string());
    out << content;
}

inline std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace detail

/// Task indices of one sub-dataset run, honoring the desk-scale cap. For D4
/// the sub-dataset is the sampled subset, for everything else the window.
inline std::vector<std::size_t> generation_indices(const SubDatasetSpec& spec,
                                                   const ContaminationPlan* plan,
                                                   std::size_t max_index) {
    std::vector<std::size_t> indices;
    if (spec.code == SubDataset::d4 && plan) {
        for (std::size_t i : plan->subset)
            if (i < max_index) indices.push_back(i);
    } else {
        for (std::size_t i = spec.window_begin; i < spec.window_end && i < max_index; ++i)
            indices.push_back(i);
    }
    return indices;
}

/// Deterministic seed of a sub-dataset's contamination plan.
inline std::uint64_t plan_seed(std::uint64_t master_seed, SubDataset code) {
    return rng::derive_seed(master_seed, rng::Stream::fault_plan,
                            static_cast<std::uint64_t>(code));
}

inline std::optional<ContaminationPlan> build_plan(const ScenarioRealization& r,
                                                   const SubDatasetSpec& spec) {
    if (!spec.fault_policy) return std::nullopt;
    std::vector<std::size_t> window;
    for (std::size_t i = spec.window_begin; i < spec.window_end; ++i) window.push_back(i);
    return plan_contamination(window, *spec.fault_policy, r.config.excitation.n_samples(),
                              r.config.excitation.sample_rate_hz,
                              plan_seed(r.config.master_seed, spec.code));
}

// ---------------------------------------------------------------------------
// text artifacts

/// `input/` profiles: hourly temperature, the live/design load history and
/// one k-m matrix per generated sub-dataset.
inline std::vector<std::filesystem::path> write_inputs(
    const ScenarioRealization& r, const std::vector<std::pair<SubDataset, const std::vector<KmRow>*>>& kms,
    const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    const fs::path input_dir = out_dir / "input";
    fs::create_directories(input_dir);
    std::vector<fs::path> written;

    {
        std::string body = "# T_degC, one row per acquisition hour\n";
        for (double t : r.env.temperature_c) body += detail::format_double("%.4f\n", t);
        const fs::path p = input_dir / "temperature_degC.txt";
        detail::write_text_file(p, body);
        written.push_back(p);
    }
    {
        std::string body = "# p_Q_lt_kN_m p_Q_st_kN_m p_des_kN_m\n";
        for (std::size_t i = 0; i < r.load.p_des_kn_m.size(); ++i) {
            body += detail::format_double("%.6f", r.load.p_q_lt_kn_m[i]);
            body += detail::format_double(" %.6f", r.load.p_q_st_kn_m[i]);
            body += detail::format_double(" %.6f\n", r.load.p_des_kn_m[i]);
        }
        const fs::path p = input_dir / "load_kN_m.txt";
        detail::write_text_file(p, body);
        written.push_back(p);
    }
    for (const auto& [code, km] : kms) {
        std::string body = "# k_N_m m_kg\n";
        for (const KmRow& row : *km) {
            body += detail::format_double("%.8e", row.k_n_m);
            body += detail::format_double(" %.8e\n", row.m_kg);
        }
        const fs::path p = input_dir / ("km_" + subdataset_name(code) + ".txt");
        detail::write_text_file(p, body);
        written.push_back(p);
    }
    return written;
}

/// Per-acquisition label rows of one sub-dataset: damage state plus the
/// fault tag when one applies.
inline std::filesystem::path write_labels(const ScenarioRealization& r, const SubDatasetSpec& spec,
                                          const ContaminationPlan* plan,
                                          const std::vector<std::size_t>& indices,
                                          const std::filesystem::path& out_dir) {
    std::string body = "# index,r_fast,d_slow_mm,class,params,t_start_s,t_end_s\n";
    for (std::size_t i : indices) {
        body += std::to_string(i);
        body += detail::format_double(",%.6f", spec.fast_rate.empty() ? 0.0 : spec.fast_rate[i]);
        body += detail::format_double(",%.6f", spec.slow_depth_mm.empty() ? 0.0 : spec.slow_depth_mm[i]);
        const FaultInstance* fi = nullptr;
        if (plan) {
            const auto it = plan->assignments.find(i);
            if (it != plan->assignments.end()) fi = &it->second;
        }
        if (fi) {
            const double dt = 1.0 / r.config.excitation.sample_rate_hz;
            body += "," + fault_class_name(fi->cls) + "," + detail::summarize(*fi);
            body += detail::format_double(",%.2f", static_cast<double>(fi->tau_start) * dt);
            body += detail::format_double(",%.2f\n", static_cast<double>(fi->tau_end) * dt);
        } else {
            body += ",none,-,-,-\n";
        }
    }
    const std::filesystem::path p = out_dir / ("labels_" + subdataset_name(spec.code) + ".txt");
    detail::write_text_file(p, body);
    return p;
}

/// The midspan-deflection matrix: sample ids in the first column, one column
/// per sub-dataset over the full grid. Faults never touch deflections, so
/// the D4 column equals D1.
inline std::filesystem::path write_deflections(const ScenarioRealization& r,
                                               const std::filesystem::path& out_dir) {
    std::vector<std::vector<double>> columns;
    std::string header = "# id";
    for (SubDataset code : all_subdatasets()) {
        columns.push_back(deflection_series(r, make_subdataset_spec(code, r)));
        header += " " + subdataset_name(code);
    }
    std::string body = header + "\n";
    for (std::size_t i = 0; i < r.n_acquisitions(); ++i) {
        body += std::to_string(i);
        for (const auto& col : columns) body += detail::format_double(" %.6f", col[i]);
        body += "\n";
    }
    const std::filesystem::path p = out_dir / "deflection_D1-5.txt";
    detail::write_text_file(p, body);
    return p;
}

// ---------------------------------------------------------------------------
// generation

/// Runs the whole pipeline for the requested sub-datasets: realizes the
/// plans, writes the text artifacts, generates every acquisition on a worker
/// pool (one task per acquisition, per-task seeding, atomic renames) and
/// assembles the checksum manifest.
inline GenerationReport run_generation(const ScenarioRealization& r,
                                       const std::vector<SubDataset>& codes,
                                       const GenerationOptions& options) {
    namespace fs = std::filesystem;
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(options.out_dir);

    struct Run {
        SubDatasetSpec spec;
        std::vector<KmRow> km;
        std::optional<ContaminationPlan> plan;
        std::vector<std::size_t> indices;
    };
    std::vector<Run> runs;
    for (SubDataset code : codes) {
        Run run;
        run.spec = make_subdataset_spec(code, r);
        run.km = build_km_matrix(r, run.spec);
        run.plan = build_plan(r, run.spec);
        run.indices = generation_indices(run.spec, run.plan ? &*run.plan : nullptr, options.max_index);
        runs.push_back(std::move(run));
    }

    Manifest manifest;
    manifest.config = r.config;

    // inputs, labels, deflections
    std::vector<std::pair<SubDataset, const std::vector<KmRow>*>> kms;
    for (const Run& run : runs) kms.emplace_back(run.spec.code, &run.km);
    std::vector<fs::path> text_files = write_inputs(r, kms, options.out_dir);
    for (const Run& run : runs)
        text_files.push_back(write_labels(r, run.spec, run.plan ? &*run.plan : nullptr, run.indices,
                                          options.out_dir));
    text_files.push_back(write_deflections(r, options.out_dir));
    for (const fs::path& p : text_files) {
        ManifestEntry e;
        e.bytes = fs::file_size(p);
        e.checksum = hash_hex(fnv1a64_file(p));
        e.kind = "text";
        manifest.entries[fs::relative(p, options.out_dir).string()] = e;
    }

    // flatten tasks
    struct Task {
        std::size_t run_idx;
        std::size_t index;
    };
    std::vector<Task> tasks;
    for (std::size_t k = 0; k < runs.size(); ++k)
        for (std::size_t i : runs[k].indices) tasks.push_back({k, i});

    struct TaskResult {
        std::string filename;
        ManifestEntry entry;
        double rms = 0.0;
    };
    std::vector<TaskResult> results(tasks.size());

    const int n_workers = detail::resolve_workers(options, r.config);
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    const auto worker = [&]() {
        RealFft fft(r.config.excitation.n_samples());
        for (;;) {
            const std::size_t t = cursor.fetch_add(1);
            if (t >= tasks.size() || failed.load()) break;
            const Task& task = tasks[t];
            const Run& run = runs[task.run_idx];
            try {
                const KmRow km = run.km[task.index];
                const SdofParams sdof = make_sdof(km.k_n_m, km.m_kg, r.config.beam.zeta);
                const SigmaDraw sigma =
                    sigmas_for(r.config.excitation, r.config.master_seed, task.index);
                AccelerationRecord rec =
                    generate_acquisition(sdof, r.config.excitation, sigma,
                                         acquisition_seed(r.config.master_seed, task.index), &fft);
                rec.index = task.index;

                std::vector<float> samples = std::move(rec.samples);
                bool contaminated = false;
                if (run.plan) {
                    const auto it = run.plan->assignments.find(task.index);
                    if (it != run.plan->assignments.end()) {
                        samples = apply_fault(samples, it->second,
                                              r.config.excitation.sample_rate_hz);
                        contaminated = true;
                    }
                }

                const std::string name = acquisition_filename(task.index, run.spec.code);
                const fs::path final_path = options.out_dir / name;
                const fs::path tmp_path = options.out_dir / (name + ".tmp");
                write_acceleration_h5(tmp_path, samples);
                fs::rename(tmp_path, final_path);

                TaskResult res;
                res.filename = name;
                res.entry.bytes = fs::file_size(final_path);
                res.entry.checksum =
                    hash_hex(fnv1a64(samples.data(), samples.size() * sizeof(float)));
                res.entry.kind = "acceleration";
                res.entry.accepted = rec.accepted;
                res.entry.contaminated = contaminated;
                res.entry.attempts = rec.attempts_used;
                res.entry.extracted_hz = rec.extracted_hz;
                res.entry.analytical_hz = rec.analytical_hz;
                double sq = 0.0;
                for (float v : samples)
                    if (std::isfinite(v)) sq += static_cast<double>(v) * v;
                res.rms = samples.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(samples.size()));
                results[t] = std::move(res);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failure_message = ex.what();
                failed.store(true);
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (failed.load()) throw std::runtime_error("run_generation: " + failure_message);

    GenerationReport report;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const Run& run = runs[tasks[t].run_idx];
        manifest.entries[results[t].filename] = results[t].entry;
        ++report.files_per_subdataset[subdataset_name(run.spec.code)];
        if (!results[t].entry.accepted) ++report.rejected_records;
        report.total_attempts += results[t].entry.attempts;
        report.mean_rms_m_s2 += results[t].rms;
    }
    report.total_files = tasks.size();
    if (!tasks.empty()) report.mean_rms_m_s2 /= static_cast<double>(tasks.size());

    for (const Run& run : runs) {
        const std::string name = subdataset_name(run.spec.code);
        manifest.subdataset_counts[name] = report.files_per_subdataset[name];
        manifest.expected_counts[name] = run.indices.size();
    }

    report.manifest_path = options.out_dir / "manifest.json";
    save_manifest(manifest, report.manifest_path);
    report.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// ---------------------------------------------------------------------------
// a-posteriori contamination of an existing corpus

struct ContaminationReport {
    std::size_t subset_files = 0;
    std::size_t contaminated = 0;
    std::filesystem::path labels_path;
};

/// Reads `source` records of an existing corpus, applies a fresh
/// contamination plan and writes them back under the `target` sub-dataset
/// code, with labels and manifest updates.
inline ContaminationReport contaminate_corpus_dir(const std::filesystem::path& corpus_dir,
                                                  SubDataset source, SubDataset target,
                                                  const FaultPolicy& policy, std::uint64_t seed,
                                                  std::optional<std::size_t> window_begin = {},
                                                  std::optional<std::size_t> window_end = {}) {
    namespace fs = std::filesystem;
    const fs::path manifest_path = corpus_dir / "manifest.json";
    Manifest manifest = load_manifest(manifest_path);
    const ScenarioConfig& config = manifest.config;
    ScenarioRealization r = realize(config);

    const std::size_t lo = window_begin.value_or(r.damage_onset());
    const std::size_t hi = window_end.value_or(r.n_acquisitions());

    // acquisitions available as source files inside the window
    std::vector<std::size_t> window;
    for (std::size_t i = lo; i < hi; ++i)
        if (fs::exists(corpus_dir / acquisition_filename(i, source))) window.push_back(i);
    if (window.empty())
        throw std::runtime_error("contaminate_corpus_dir: no source records in window");

    const ContaminationPlan plan = plan_contamination(window, policy, config.excitation.n_samples(),
                                                      config.excitation.sample_rate_hz, seed);

    for (std::size_t i : plan.subset) {
        std::vector<float> samples = read_acceleration_h5(corpus_dir / acquisition_filename(i, source));
        const auto it = plan.assignments.find(i);
        if (it != plan.assignments.end())
            samples = apply_fault(samples, it->second, config.excitation.sample_rate_hz);

        const std::string name = acquisition_filename(i, target);
        const fs::path tmp = corpus_dir / (name + ".tmp");
        write_acceleration_h5(tmp, samples);
        fs::rename(tmp, corpus_dir / name);

        ManifestEntry e;
        const auto src_entry = manifest.entries.find(acquisition_filename(i, source));
        if (src_entry != manifest.entries.end()) e = src_entry->second;
        e.bytes = fs::file_size(corpus_dir / name);
        e.checksum = hash_hex(fnv1a64(samples.data(), samples.size() * sizeof(float)));
        e.kind = "acceleration";
        e.contaminated = it != plan.assignments.end();
        manifest.entries[name] = e;
    }

    SubDatasetSpec spec = make_subdataset_spec(target, r);
    const fs::path labels =
        write_labels(r, spec, &plan, plan.subset, corpus_dir);
    ManifestEntry le;
    le.bytes = fs::file_size(labels);
    le.checksum = hash_hex(fnv1a64_file(labels));
    le.kind = "text";
    manifest.entries[fs::relative(labels, corpus_dir).string()] = le;

    manifest.subdataset_counts[subdataset_name(target)] = plan.subset.size();
    manifest.expected_counts[subdataset_name(target)] = plan.subset.size();
    save_manifest(manifest, manifest_path);

    ContaminationReport report;
    report.subset_files = plan.subset.size();
    report.contaminated = plan.assignments.size();
    report.labels_path = labels;
    return report;
}

}  // namespace shmbench
