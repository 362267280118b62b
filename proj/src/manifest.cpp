#include "xlr/manifest.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "xlr/errors.hpp"
#include "xlr/rng.hpp"

namespace xlr {

std::string file_digest_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file for digest: " + path.string());
    std::uint64_t h = 0xCBF29CE484222325ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        h = fnv1a64({buf, static_cast<std::size_t>(in.gcount())}, h);
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& output_path) {
    nlohmann::ordered_json j;
    j["tool_version"] = manifest.tool_version;
    j["subcommand"] = manifest.subcommand;
    j["parameters"] = manifest.parameters;
    j["input_digests"] = manifest.input_digests;
    j["rng_seed"] = manifest.rng_seed;
    if (!manifest.rng_algorithm.empty()) j["rng_algorithm"] = manifest.rng_algorithm;

    const std::filesystem::path path = output_path.string() + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write manifest: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("short write to manifest: " + path.string());
}

}  // namespace xlr
