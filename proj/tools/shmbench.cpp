// shmbench: synthetic SHM benchmark generator for a fixed-fixed steel beam.
// Subcommands: generate, contaminate, inspect, plot.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "shmbench/pipeline.hpp"
#include "shmbench/svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int env_default_workers() {
    if (const char* v = std::getenv("SHMBENCH_WORKERS")) {
        const int n = std::atoi(v);
        if (n > 0) return n;
    }
    return 0;
}

shmbench::ScenarioConfig load_or_default_config(const std::string& path) {
    if (path.empty()) return shmbench::ScenarioConfig{};
    return shmbench::load_config(path);
}

std::vector<shmbench::SubDataset> parse_codes(const std::vector<std::string>& names) {
    std::vector<shmbench::SubDataset> codes;
    for (const std::string& n : names) codes.push_back(shmbench::parse_subdataset(n));
    if (codes.empty()) codes.push_back(shmbench::SubDataset::d1);
    return codes;
}

// --------------------------------------------------------------------------
// generate

int cmd_generate(const std::string& config_path, const std::vector<std::string>& code_names,
                 int workers, std::uint64_t seed, bool seed_set, const std::string& out,
                 std::size_t max_index, const std::string& dump_config, bool as_json) {
    shmbench::ScenarioConfig config = load_or_default_config(config_path);
    if (seed_set) config.master_seed = seed;
    if (!dump_config.empty()) shmbench::save_config(config, dump_config);

    const auto codes = parse_codes(code_names);
    const shmbench::ScenarioRealization realization = shmbench::realize(config);

    shmbench::GenerationOptions options;
    options.out_dir = out;
    options.workers = workers > 0 ? workers : env_default_workers();
    options.max_index = max_index;

    const shmbench::GenerationReport report = shmbench::run_generation(realization, codes, options);

    const auto envelope = shmbench::load_envelope(realization.load);
    if (as_json) {
        json j{{"total_files", report.total_files},
               {"files_per_subdataset", report.files_per_subdataset},
               {"rejected_records", report.rejected_records},
               {"mean_attempts",
                report.total_files ? report.total_attempts / static_cast<double>(report.total_files) : 0.0},
               {"elapsed_s", report.elapsed_s},
               {"acquisitions_per_s",
                report.elapsed_s > 0 ? static_cast<double>(report.total_files) / report.elapsed_s : 0.0},
               {"mean_record_rms_m_s2", report.mean_rms_m_s2},
               {"manifest", report.manifest_path.string()},
               {"load_envelope",
                {{"mean_p_q_kn_m", envelope.mean_p_q},
                 {"max_p_q_kn_m", envelope.max_p_q},
                 {"min_p_q_kn_m", envelope.min_p_q},
                 {"max_ratio_pct", envelope.max_ratio_pct},
                 {"min_ratio_pct", envelope.min_ratio_pct}}}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    for (const auto& [name, count] : report.files_per_subdataset)
        std::printf("%-5s %zu files\n", name.c_str(), count);
    std::printf("total %zu files in %.1f s (%.1f acq/s), mean attempts %.2f, %zu best-of-N records\n",
                report.total_files, report.elapsed_s,
                report.elapsed_s > 0 ? static_cast<double>(report.total_files) / report.elapsed_s : 0.0,
                report.total_files ? report.total_attempts / static_cast<double>(report.total_files) : 0.0,
                report.rejected_records);
    if (report.total_files > 0)
        std::printf("mean record RMS %.3e m/s^2 (micro-vibration comfort range)\n",
                    report.mean_rms_m_s2);
    std::printf("live load: mean %.2f kN/m, range [%.2f, %.2f], ratio to dead load %.1f%%-%.1f%%\n",
                envelope.mean_p_q, envelope.min_p_q, envelope.max_p_q, envelope.min_ratio_pct,
                envelope.max_ratio_pct);
    std::printf("manifest: %s\n", report.manifest_path.string().c_str());
    return 0;
}

// --------------------------------------------------------------------------
// contaminate

int cmd_contaminate(const std::string& corpus, const std::string& policy_path, std::uint64_t seed,
                    bool seed_set, const std::string& source, const std::string& target,
                    long window_begin, long window_end) {
    const shmbench::Manifest manifest = shmbench::load_manifest(fs::path(corpus) / "manifest.json");

    shmbench::FaultPolicy policy = manifest.config.d4_policy;
    if (!policy_path.empty()) {
        std::ifstream in(policy_path);
        if (!in) throw std::runtime_error("cannot open policy file " + policy_path);
        json j;
        in >> j;
        j.get_to(policy);
    }
    const std::uint64_t use_seed =
        seed_set ? seed
                 : shmbench::plan_seed(manifest.config.master_seed, shmbench::parse_subdataset(target));

    const auto report = shmbench::contaminate_corpus_dir(
        corpus, shmbench::parse_subdataset(source), shmbench::parse_subdataset(target), policy,
        use_seed,
        window_begin >= 0 ? std::optional<std::size_t>(window_begin) : std::nullopt,
        window_end >= 0 ? std::optional<std::size_t>(window_end) : std::nullopt);

    std::printf("%zu records in sub-dataset, %zu contaminated\nlabels: %s\n", report.subset_files,
                report.contaminated, report.labels_path.string().c_str());
    return 0;
}

// --------------------------------------------------------------------------
// inspect

struct FileReport {
    std::string path;
    std::size_t samples = 0;
    std::size_t gaps = 0;
    double extracted_hz = 0.0;
    bool has_frequency = false;
};

FileReport inspect_file(const fs::path& path, const shmbench::ExcitationParams& params) {
    FileReport rep;
    rep.path = path.string();
    const std::vector<float> samples = shmbench::read_acceleration_h5(path);
    rep.samples = samples.size();
    for (float v : samples)
        if (!std::isfinite(v)) ++rep.gaps;
    if (rep.gaps == 0 && !samples.empty()) {
        const auto as_double = shmbench::to_double(samples);
        try {
            rep.extracted_hz =
                shmbench::dominant_frequency_hz(as_double, params.sample_rate_hz,
                                                params.search_band_lo_hz, params.search_band_hi_hz);
            rep.has_frequency = true;
        } catch (const std::exception&) {
            rep.has_frequency = false;
        }
    }
    return rep;
}

int cmd_inspect(const std::string& target, bool as_json) {
    const fs::path path(target);
    shmbench::ExcitationParams default_params{};

    if (fs::is_regular_file(path) && path.extension() == ".h5") {
        const FileReport rep = inspect_file(path, default_params);
        if (as_json) {
            json j{{"path", rep.path},
                   {"samples", rep.samples},
                   {"units", "m/s^2"},
                   {"sample_rate_hz", default_params.sample_rate_hz},
                   {"gap_samples", rep.gaps}};
            if (rep.has_frequency) j["dominant_frequency_hz"] = rep.extracted_hz;
            std::cout << j.dump(2) << "\n";
        } else {
            std::printf("%s: %zu samples @ %.0f Hz [m/s^2], %zu gap samples", rep.path.c_str(),
                        rep.samples, default_params.sample_rate_hz, rep.gaps);
            if (rep.has_frequency) std::printf(", dominant %.3f Hz", rep.extracted_hz);
            std::printf("\n");
        }
        return rep.samples == 0 ? 1 : 0;
    }

    if (!fs::is_directory(path)) {
        std::fprintf(stderr, "inspect: %s is neither an .h5 file nor a corpus directory\n",
                     target.c_str());
        return 2;
    }

    // corpus: verify the manifest
    shmbench::Manifest manifest;
    try {
        manifest = shmbench::load_manifest(path / "manifest.json");
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "inspect: %s\n", ex.what());
        return 2;
    }

    const shmbench::ExcitationParams& params = manifest.config.excitation;
    std::size_t missing = 0, corrupt = 0, badly_named = 0;
    std::size_t n_acc = 0, n_accepted = 0, tolerance_violations = 0;
    std::size_t recomputed = 0, recompute_mismatch = 0;
    const std::regex name_pattern(R"(acc\d{5}-\d\d?\.h5)");
    for (const auto& [name, entry] : manifest.entries) {
        const fs::path fp = path / name;
        if (!fs::exists(fp)) {
            ++missing;
            if (!as_json) std::printf("MISSING %s\n", name.c_str());
            continue;
        }
        std::string checksum;
        if (entry.kind == "acceleration") {
            const auto samples = shmbench::read_acceleration_h5(fp);
            checksum = shmbench::hash_hex(
                shmbench::fnv1a64(samples.data(), samples.size() * sizeof(float)));
            if (!std::regex_match(fp.filename().string(), name_pattern)) ++badly_named;
            ++n_acc;
            if (entry.accepted) {
                ++n_accepted;
                // the acceptance contract recorded at generation time
                if (std::abs(entry.extracted_hz / entry.analytical_hz - 1.0) >
                    params.frequency_tolerance + 1e-12)
                    ++tolerance_violations;
                // spot-check the recorded frequency against the stored
                // samples; contaminated records deviate by construction
                bool has_gap = false;
                for (float v : samples)
                    if (!std::isfinite(v)) { has_gap = true; break; }
                if (!has_gap && !entry.contaminated && recomputed < 50) {
                    ++recomputed;
                    const double f = shmbench::dominant_frequency_hz(
                        shmbench::to_double(samples), params.sample_rate_hz,
                        params.search_band_lo_hz, params.search_band_hi_hz);
                    if (std::abs(f - entry.extracted_hz) >
                        2.0 * params.sample_rate_hz / static_cast<double>(samples.size()))
                        ++recompute_mismatch;
                }
            }
        } else {
            checksum = shmbench::hash_hex(shmbench::fnv1a64_file(fp));
        }
        if (checksum != entry.checksum) {
            ++corrupt;
            if (!as_json) std::printf("CORRUPT %s\n", name.c_str());
        }
    }

    bool count_mismatch = false;
    for (const auto& [name, expected] : manifest.expected_counts) {
        const auto it = manifest.subdataset_counts.find(name);
        const std::size_t actual = it == manifest.subdataset_counts.end() ? 0 : it->second;
        if (actual != expected) count_mismatch = true;
    }

    if (as_json) {
        json j{{"entries", manifest.entries.size()},
               {"missing", missing},
               {"corrupt", corrupt},
               {"badly_named", badly_named},
               {"acceleration_records", n_acc},
               {"accepted_records", n_accepted},
               {"tolerance_violations", tolerance_violations},
               {"frequency_spot_checks", recomputed},
               {"frequency_spot_check_mismatches", recompute_mismatch},
               {"subdataset_counts", manifest.subdataset_counts},
               {"expected_counts", manifest.expected_counts},
               {"counts_match", !count_mismatch}};
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& [name, count] : manifest.subdataset_counts) {
            const auto it = manifest.expected_counts.find(name);
            std::printf("%-5s %zu files (expected %zu)\n", name.c_str(), count,
                        it == manifest.expected_counts.end() ? count : it->second);
        }
        std::printf("%zu manifest entries: %zu missing, %zu corrupt, %zu badly named\n",
                    manifest.entries.size(), missing, corrupt, badly_named);
        std::printf("%zu acceleration records, %zu accepted within tolerance (%zu violations), "
                    "%zu/%zu frequency spot-checks consistent\n",
                    n_acc, n_accepted, tolerance_violations, recomputed - recompute_mismatch,
                    recomputed);
    }
    return (missing || corrupt || badly_named || count_mismatch || tolerance_violations ||
            recompute_mismatch)
               ? 1
               : 0;
}

// --------------------------------------------------------------------------
// plot

std::vector<double> hours_axis(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) / 24.0;
    return x;
}

std::string psd_panel(const std::vector<float>& samples, double fs, const std::string& title) {
    const auto as_double = shmbench::to_double(samples);
    std::vector<double> clean = as_double;
    for (double& v : clean)
        if (!std::isfinite(v)) v = 0.0;  // gaps plotted as silence in the PSD panel
    const auto psd = shmbench::welch_psd(clean, fs);
    std::vector<double> f, db;
    for (std::size_t k = 1; k < psd.frequency_hz.size(); ++k) {
        if (psd.frequency_hz[k] > 25.0) break;
        f.push_back(psd.frequency_hz[k]);
        db.push_back(10.0 * std::log10(psd.power[k] + 1e-30));
    }
    shmbench::SvgPlot plot(title + " (PSD)", "frequency [Hz]", "PSD [dB]");
    plot.add_series(std::move(f), std::move(db), "#1f77b4");
    return plot.render();
}

std::string time_panel(const std::vector<float>& samples, double fs, const std::string& title) {
    std::vector<double> t(samples.size()), y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        t[i] = static_cast<double>(i) / fs;
        y[i] = samples[i];
    }
    shmbench::SvgPlot plot(title + " (time)", "t [s]", "a [m/s^2]");
    plot.add_series(std::move(t), std::move(y), "#d62728");
    return plot.render();
}

int cmd_plot(const std::string& config_path, const std::string& series, const std::string& out) {
    shmbench::ScenarioConfig config = load_or_default_config(config_path);
    const shmbench::ScenarioRealization r = shmbench::realize(config);

    if (series == "load") {
        shmbench::SvgPlot plot("Design load history", "day", "p [kN/m]");
        plot.add_series(hours_axis(r.load.p_des_kn_m.size()), r.load.p_des_kn_m, "#1f77b4", "p_des");
        plot.add_series(hours_axis(r.load.p_q_lt_kn_m.size()), r.load.p_q_lt_kn_m, "#2ca02c", "p_Q,lt");
        plot.add_series(hours_axis(r.load.p_q_st_kn_m.size()), r.load.p_q_st_kn_m, "#d62728", "p_Q,st");
        plot.write(out);
    } else if (series == "temperature") {
        shmbench::SvgPlot plot("Hourly temperature", "day", "T [degC]");
        plot.add_series(hours_axis(r.env.temperature_c.size()), r.env.temperature_c, "#1f77b4");
        plot.write(out);
    } else if (series == "modulus") {
        std::vector<double> t, e;
        for (double tc = -10.0; tc <= 40.0; tc += 0.25) {
            t.push_back(tc);
            e.push_back(shmbench::youngs_modulus_mpa(tc, config.env));
        }
        shmbench::SvgPlot plot("Temperature-dependent Young's modulus", "T [degC]", "E [MPa]");
        plot.add_series(std::move(t), std::move(e), "#1f77b4");
        plot.write(out);
    } else if (series == "deflection") {
        shmbench::SvgPlot plot("Midspan deflection, undamaged history", "day", "delta [mm]");
        const auto spec = shmbench::make_subdataset_spec(shmbench::SubDataset::d1, r);
        plot.add_series(hours_axis(r.n_acquisitions()), shmbench::deflection_series(r, spec),
                        "#1f77b4");
        plot.write(out);
    } else if (series == "spectrum") {
        const auto input = shmbench::colored_input(config.excitation, config.master_seed);
        const auto psd = shmbench::welch_psd(input, config.excitation.sample_rate_hz);
        std::vector<double> f, db;
        for (std::size_t k = 1; k < psd.frequency_hz.size(); ++k) {
            if (psd.frequency_hz[k] > 25.0) break;
            f.push_back(psd.frequency_hz[k]);
            db.push_back(10.0 * std::log10(psd.power[k] + 1e-30));
        }
        shmbench::SvgPlot plot("Sample ambient-vibration input spectrum", "frequency [Hz]",
                               "PSD [dB]");
        plot.add_series(std::move(f), std::move(db), "#1f77b4");
        plot.write(out);
    } else if (series == "faults") {
        // one clean exemplar, then every injector with mid-range parameters
        const auto spec = shmbench::make_subdataset_spec(shmbench::SubDataset::d1, r);
        const auto km = shmbench::km_for(0, r, spec);
        const auto sdof = shmbench::make_sdof(km.k_n_m, km.m_kg, config.beam.zeta);
        const auto sigma = shmbench::sigmas_for(config.excitation, config.master_seed, 0);
        const auto record = shmbench::generate_acquisition(
            sdof, config.excitation, sigma, shmbench::acquisition_seed(config.master_seed, 0));
        const double fs = config.excitation.sample_rate_hz;
        const std::size_t n = record.samples.size();

        std::vector<std::string> panels;
        panels.push_back(time_panel(record.samples, fs, "clean"));
        panels.push_back(psd_panel(record.samples, fs, "clean"));
        for (shmbench::FaultClass cls : shmbench::all_fault_classes()) {
            shmbench::FaultInstance fi;
            fi.cls = cls;
            fi.tau_start = n / 4;
            fi.tau_end = n;
            fi.noise_seed = 99;
            switch (cls) {
                case shmbench::FaultClass::drift: fi.p1 = 1.5e-3; break;
                case shmbench::FaultClass::bias: fi.p1 = 1.45; break;
                case shmbench::FaultClass::spikes: fi.p1 = 2e-2; fi.spike_count = 15; break;
                case shmbench::FaultClass::gain: fi.p1 = 2.0; break;
                case shmbench::FaultClass::noise: fi.p1 = 5e-4; break;
                case shmbench::FaultClass::missing: break;
                case shmbench::FaultClass::cable_temporary:
                    fi.p1 = 0.1; fi.p2 = 1.0; fi.p3 = 0.035; fi.tau_end = n / 2;
                    break;
                case shmbench::FaultClass::cable_permanent:
                    fi.p1 = 0.1; fi.p2 = 1.0; fi.p3 = 0.035;
                    break;
            }
            const auto faulted = shmbench::apply_fault(record.samples, fi, fs);
            panels.push_back(time_panel(faulted, fs, shmbench::fault_class_name(cls)));
            panels.push_back(psd_panel(faulted, fs, shmbench::fault_class_name(cls)));
        }
        shmbench::write_svg_panels(panels, 960, 420, out);
    } else {
        std::fprintf(stderr, "plot: unknown series '%s'\n", series.c_str());
        return 2;
    }
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic SHM benchmark generator (fixed-fixed steel beam)"};
    app.require_subcommand(1);

    // generate
    std::string g_config, g_out = "corpus", g_dump;
    std::vector<std::string> g_codes;
    int g_workers = 0;
    std::uint64_t g_seed = 0;
    std::size_t g_max_index = SIZE_MAX;
    bool g_json = false;
    auto* gen = app.add_subcommand("generate", "Generate sub-dataset corpora");
    gen->add_option("-c,--config", g_config, "Scenario config JSON (defaults used when absent)");
    gen->add_option("-s,--subdataset", g_codes, "Sub-dataset code (repeatable): D1, D2.1, ..., D5");
    gen->add_option("-w,--workers", g_workers, "Worker threads (default: SHMBENCH_WORKERS or cores)");
    auto* g_seed_opt = gen->add_option("--seed", g_seed, "Master seed override");
    gen->add_option("-o,--out", g_out, "Output corpus directory");
    gen->add_option("--max-index", g_max_index, "Desk-scale cap: only indices below this generate");
    gen->add_option("--dump-config", g_dump, "Write the effective config JSON to this path");
    gen->add_flag("--json", g_json, "Machine-readable report");

    // contaminate
    std::string c_corpus, c_policy, c_source = "D1", c_target = "D4";
    std::uint64_t c_seed = 0;
    long c_wbegin = -1, c_wend = -1;
    auto* con = app.add_subcommand("contaminate", "Apply sensor faults to an existing corpus");
    con->add_option("corpus", c_corpus, "Corpus directory (with manifest.json)")->required();
    con->add_option("-p,--policy", c_policy, "Fault policy JSON (default: config's D4 policy)");
    auto* c_seed_opt = con->add_option("--seed", c_seed, "Contamination seed override");
    con->add_option("--source", c_source, "Source sub-dataset code");
    con->add_option("--target", c_target, "Target sub-dataset code");
    con->add_option("--window-begin", c_wbegin, "First eligible index (default: damage onset)");
    con->add_option("--window-end", c_wend, "One past the last eligible index");

    // inspect
    std::string i_target;
    bool i_json = false;
    auto* ins = app.add_subcommand("inspect", "Report on a record or verify a corpus");
    ins->add_option("path", i_target, "An .h5 record or a corpus directory")->required();
    ins->add_flag("--json", i_json, "Machine-readable report");

    // plot
    std::string p_config, p_series = "deflection", p_out = "figure.svg";
    auto* plt = app.add_subcommand("plot", "Write figure files");
    plt->add_option("-c,--config", p_config, "Scenario config JSON");
    plt->add_option("--series", p_series,
                    "One of: load, temperature, modulus, deflection, spectrum, faults");
    plt->add_option("-o,--out", p_out, "Output SVG path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(g_config, g_codes, g_workers, g_seed, !g_seed_opt->empty(), g_out,
                                g_max_index, g_dump, g_json);
        if (con->parsed())
            return cmd_contaminate(c_corpus, c_policy, c_seed, !c_seed_opt->empty(), c_source,
                                   c_target, c_wbegin, c_wend);
        if (ins->parsed()) return cmd_inspect(i_target, i_json);
        if (plt->parsed()) return cmd_plot(p_config, p_series, p_out);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 0;
}
