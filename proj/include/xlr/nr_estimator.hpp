#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "xlr/series.hpp"
#include "xlr/trace.hpp"

namespace xlr {

/// Impact record for one lost packet. Only the first lost packet of a frame
/// is effective; the decoder is desynchronized past that point, so later
/// losses in the same frame add nothing (xi recorded as 0).
struct LossImpact {
    PacketRecord packet;
    double xi = 0.0;
    bool effective = false;
};

/// Per-frame ancestor sets, keyed by decode_index. Ancestors never cross an
/// IDR boundary (closed structures).
struct DependencyClosure {
    std::map<int, std::vector<int>> ancestors;  // sorted decode indices

    const std::vector<int>& of(int decode_index) const;
};

/// Impaired-area fraction when packet p (1-based) is the first loss of a
/// frame: the suffix of packet sizes from p over the frame total.
double xi_for_loss(const std::vector<PacketRecord>& frame_packets, int lost_index_in_frame);

/// One LossImpact per lost packet, in global order.
std::vector<LossImpact> effective_losses(const StreamTrace& trace);

/// Transitive closure over direct_refs, computed within each IDR-delimited
/// window. Throws on reference cycles.
DependencyClosure dependency_closure(const std::vector<FrameMeta>& frames);

/// Effective impaired area per frame: the first-loss xi where the frame has
/// lost packets, and 1.0 for frames carried by no packet at all (dropped
/// wholesale upstream). Frames without losses are absent.
std::map<int, double> effective_xi_by_frame(const StreamTrace& trace);

/// Syntactic (no-pixel) XLR estimate: each frame takes the greatest effective
/// impaired area among its own losses and its ancestors'; zero when none.
XlrSeries estimate_xlr(const StreamTrace& trace);

}  // namespace xlr
