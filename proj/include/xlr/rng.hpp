#pragma once

#include <cstdint>
#include <string_view>

namespace xlr {

/// Counter-based generator (splitmix64): the state is a Weyl sequence and each
/// output is a finalizer hash of it, so streams are reproducible across
/// platforms and trivially splittable via derive_seed.
class SplitMix64 {
public:
    static constexpr std::string_view kAlgorithmName = "splitmix64";

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

/// FNV-1a over arbitrary bytes; stable across platforms (unlike std::hash).
constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xCBF29CE484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Child seed for an independent stream, keyed by a label (sweep cell, drift run...).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view key) {
    std::uint64_t z = master ^ fnv1a64(key);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace xlr
