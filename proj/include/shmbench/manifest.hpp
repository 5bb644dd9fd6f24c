#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "shmbench/scenario.hpp"

namespace shmbench {

/// 64-bit FNV-1a over a byte range.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t state = 0xcbf29ce484222325ULL) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        state ^= bytes[i];
        state *= 0x100000001b3ULL;
    }
    return state;
}

inline std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("fnv1a64_file: cannot open " + path.string());
    std::uint64_t state = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        state = fnv1a64(buf, static_cast<std::size_t>(in.gcount()), state);
    return state;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// One corpus file: size plus a checksum. Acceleration files are hashed over
/// their float32 payload (the h5 container wraps it), text files over their
/// bytes. Acceleration entries also carry the retry diagnostics of their
/// record.
struct ManifestEntry {
    std::uint64_t bytes = 0;
    std::string checksum;
    std::string kind;  // "acceleration" | "text"

    // retry diagnostics of the underlying clean record; a contaminated
    // record's stored samples deviate from them by construction
    bool accepted = false;
    bool contaminated = false;
    int attempts = 0;
    double extracted_hz = 0.0;
    double analytical_hz = 0.0;

    bool operator==(const ManifestEntry&) const = default;
};

struct Manifest {
    ScenarioConfig config;
    std::map<std::string, ManifestEntry> entries;           // relative path -> entry
    std::map<std::string, std::size_t> subdataset_counts;   // "D1" -> file count
    std::map<std::string, std::size_t> expected_counts;

    bool same_checksums(const Manifest& other) const { return entries == other.entries; }
};

inline void to_json(nlohmann::json& j, const ManifestEntry& e) {
    j = {{"bytes", e.bytes}, {"checksum", e.checksum}, {"kind", e.kind}};
    if (e.kind == "acceleration") {
        j["accepted"] = e.accepted;
        j["contaminated"] = e.contaminated;
        j["attempts"] = e.attempts;
        j["extracted_hz"] = e.extracted_hz;
        j["analytical_hz"] = e.analytical_hz;
    }
}
inline void from_json(const nlohmann::json& j, ManifestEntry& e) {
    e.bytes = j.at("bytes").get<std::uint64_t>();
    e.checksum = j.at("checksum").get<std::string>();
    e.kind = j.value("kind", std::string{"text"});
    e.accepted = j.value("accepted", false);
    e.contaminated = j.value("contaminated", false);
    e.attempts = j.value("attempts", 0);
    e.extracted_hz = j.value("extracted_hz", 0.0);
    e.analytical_hz = j.value("analytical_hz", 0.0);
}

inline void to_json(nlohmann::json& j, const Manifest& m) {
    j = {{"config", m.config},
         {"entries", m.entries},
         {"subdataset_counts", m.subdataset_counts},
         {"expected_counts", m.expected_counts}};
}
inline void from_json(const nlohmann::json& j, Manifest& m) {
    j.at("config").get_to(m.config);
    m.entries = j.at("entries").get<std::map<std::string, ManifestEntry>>();
    m.subdataset_counts = j.value("subdataset_counts", m.subdataset_counts);
    m.expected_counts = j.value("expected_counts", m.expected_counts);
}

inline void save_manifest(const Manifest& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_manifest: cannot open " + path.string());
    out << nlohmann::json(m).dump(2) << "\n";
}

inline Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_manifest: cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    return j.get<Manifest>();
}

}  // namespace shmbench
