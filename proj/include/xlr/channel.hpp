#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "xlr/trace.hpp"

namespace xlr {

/// Simplified Gilbert channel: Good always delivers, Bad always drops.
/// plr is the stationary loss fraction, mean_burst_len the expected run of
/// consecutive losses.
struct GilbertParams {
    double plr = 0.01;
    double mean_burst_len = 2.0;
    std::uint64_t rng_seed = 0;
};

struct GilbertTransitions {
    double p_good_to_bad = 0.0;
    double p_bad_to_good = 0.0;
};

/// Solves the stationary equations: p_bg = 1/L, p_gb = plr/(L*(1-plr)).
/// Throws when the parameters do not yield valid probabilities.
GilbertTransitions derive_transitions(const GilbertParams& params);

/// Marks packets lost by iterating the two-state chain once per packet in
/// global order, starting from Good. Deterministic given rng_seed.
/// Pre-existing losses are an error unless compose is set, in which case the
/// new pattern is OR-ed onto the old one.
StreamTrace apply_channel(const StreamTrace& trace, const GilbertParams& params, bool compose = false);

/// The experiment grid: loss rates 0.1%, 0.5% and 1% at mean burst length 2.
inline constexpr std::array<double, 3> kPresetPlrs = {0.001, 0.005, 0.01};
inline constexpr double kPresetBurstLen = 2.0;

}  // namespace xlr
