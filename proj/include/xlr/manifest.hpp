#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace xlr {

inline constexpr const char* kToolVersion = "xlr-toolkit 0.1.0";

/// Reproducibility record written next to every CLI output file
/// (<output>.manifest.json). Reruns with an identical manifest produce
/// identical outputs.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
    std::uint64_t rng_seed = 0;
    std::string rng_algorithm;  // empty when the run draws no randomness
    std::string tool_version = kToolVersion;
};

std::string file_digest_hex(const std::filesystem::path& path);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& output_path);

}  // namespace xlr
