#include "xlr/oracle.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <vector>

#include "xlr/errors.hpp"
#include "xlr/fr_metric.hpp"
#include "xlr/nr_estimator.hpp"
#include "xlr/rng.hpp"

namespace xlr {

namespace {

void check_drift(const DriftConfig& drift) {
    if (drift.heal_rate < 0.0 || drift.heal_rate > 1.0 || drift.grow_rate < 0.0 || drift.grow_rate > 1.0)
        throw ValidationError("drift rates must be in [0, 1]");
}

/// Marks the raster-order suffix covering round(xi*W*H) pixels, half up.
void mark_suffix(MaskGrid& mask, double xi) {
    const Eigen::Index n = mask.size();
    const auto impaired =
        static_cast<Eigen::Index>(std::floor(xi * static_cast<double>(n) + 0.5));
    if (impaired <= 0) return;
    Eigen::Map<Eigen::Array<bool, Eigen::Dynamic, 1>> flat(mask.data(), n);
    flat.tail(std::min(impaired, n)).setConstant(true);
}

/// One heal/grow perturbation step. Both effects read the pre-hop snapshot:
/// impaired pixels heal, clean pixels with an impaired 4-neighbour grow.
void drift_hop(MaskGrid& mask, const DriftConfig& drift, SplitMix64& rng) {
    const Eigen::Index rows = mask.rows(), cols = mask.cols();
    const MaskGrid before = mask;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (before(r, c)) {
                if (drift.heal_rate > 0.0 && rng.next_unit() < drift.heal_rate) mask(r, c) = false;
            } else if (drift.grow_rate > 0.0) {
                const bool boundary = (r > 0 && before(r - 1, c)) || (r + 1 < rows && before(r + 1, c)) ||
                                      (c > 0 && before(r, c - 1)) || (c + 1 < cols && before(r, c + 1));
                if (boundary && rng.next_unit() < drift.grow_rate) mask(r, c) = true;
            }
        }
    }
}

XlrSeries simulate(const StreamTrace& trace, int width, int height, const DriftConfig* drift,
                   const MaskSink& sink) {
    require_valid(trace);
    if (width < 1 || height < 1)
        throw ValidationError("mask dimensions must be >= 1x1, got " + std::to_string(width) + "x" +
                              std::to_string(height));

    const std::map<int, double> xi = effective_xi_by_frame(trace);
    const double total_pixels = static_cast<double>(width) * height;
    SplitMix64 rng(drift ? drift->rng_seed : 0);

    std::vector<FrameXlr> per_frame;
    per_frame.reserve(trace.frames.size());

    // Masks of the current IDR window only; references never reach further back.
    std::map<int, MaskGrid> window_masks;
    for (const FrameMeta& f : trace.frames) {
        if (f.frame_type == FrameType::IDR) window_masks.clear();

        MaskGrid mask = MaskGrid::Constant(height, width, false);
        bool inherited = false;
        for (int r : f.direct_refs) {
            auto it = window_masks.find(r);
            if (it == window_masks.end()) continue;
            mask = mask || it->second;
            inherited = true;
        }
        if (drift && inherited) drift_hop(mask, *drift, rng);
        if (auto own = xi.find(f.decode_index); own != xi.end()) mark_suffix(mask, own->second);

        per_frame.push_back({f.decode_index, static_cast<double>(mask.count()) / total_pixels});
        if (sink) sink(LossMask{f.decode_index, mask});
        window_masks.emplace(f.decode_index, std::move(mask));
    }

    XlrSeries series = make_series(std::move(per_frame), Provenance::ORACLE);
    return series;
}

}  // namespace

XlrSeries simulate_exact(const StreamTrace& trace, int width, int height, const MaskSink& sink) {
    return simulate(trace, width, height, nullptr, sink);
}

XlrSeries simulate_drift(const StreamTrace& trace, int width, int height, const DriftConfig& drift,
                         const MaskSink& sink) {
    check_drift(drift);
    if (drift.heal_rate == 0.0 && drift.grow_rate == 0.0) return simulate(trace, width, height, nullptr, sink);
    return simulate(trace, width, height, &drift, sink);
}

void write_mask_pgm(const MaskGrid& mask, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write PGM: " + path.string());
    out << "P5\n" << mask.cols() << ' ' << mask.rows() << "\n255\n";
    for (Eigen::Index r = 0; r < mask.rows(); ++r)
        for (Eigen::Index c = 0; c < mask.cols(); ++c) out.put(mask(r, c) ? '\xff' : '\0');
    if (!out) throw IoError("short write to PGM: " + path.string());
}

}  // namespace xlr
