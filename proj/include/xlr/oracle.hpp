#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <functional>

#include "xlr/series.hpp"
#include "xlr/trace.hpp"

namespace xlr {

/// Impaired-pixel grid for one frame; row-major so flat memory is raster order.
using MaskGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct LossMask {
    int decode_index = 0;
    MaskGrid grid;
};

/// Observer for per-frame masks (PGM dumps, debugging). Called once per frame
/// in decode order.
using MaskSink = std::function<void(const LossMask&)>;

/// Content-drift perturbation applied at every propagation hop: impaired
/// pixels heal with heal_rate, clean pixels touching the impaired region
/// spread with grow_rate. Operates on masks only, never on packet data.
struct DriftConfig {
    double heal_rate = 0.0;
    double grow_rate = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Brute-force propagation simulation under the desync model: a frame's mask
/// is the union of its references' masks (co-located copy) plus the raster
/// suffix covering round(xi*W*H) pixels for its own effective loss.
XlrSeries simulate_exact(const StreamTrace& trace, int width, int height, const MaskSink& sink = {});

/// As simulate_exact, but each reference-propagation hop is perturbed per the
/// drift config. Zero rates reproduce simulate_exact bit for bit.
XlrSeries simulate_drift(const StreamTrace& trace, int width, int height, const DriftConfig& drift,
                         const MaskSink& sink = {});

/// 8-bit binary PGM, impaired pixels white (255).
void write_mask_pgm(const MaskGrid& mask, const std::filesystem::path& path);

}  // namespace xlr
