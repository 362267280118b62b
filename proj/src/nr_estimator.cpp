#include "xlr/nr_estimator.hpp"

#include <algorithm>

#include "xlr/errors.hpp"
#include "xlr/fr_metric.hpp"

namespace xlr {

const std::vector<int>& DependencyClosure::of(int decode_index) const {
    static const std::vector<int> empty;
    auto it = ancestors.find(decode_index);
    return it == ancestors.end() ? empty : it->second;
}

double xi_for_loss(const std::vector<PacketRecord>& frame_packets, int lost_index_in_frame) {
    if (frame_packets.empty()) throw ValidationError("xi_for_loss: empty packet list");
    const int n = static_cast<int>(frame_packets.size());
    if (lost_index_in_frame < 1 || lost_index_in_frame > n)
        throw ValidationError("xi_for_loss: lost packet index " + std::to_string(lost_index_in_frame) +
                              " outside [1," + std::to_string(n) + "]");
    std::uint64_t total = 0, suffix = 0;
    for (const PacketRecord& p : frame_packets) {
        if (p.size_octets == 0) throw ValidationError("xi_for_loss: packet sizes must be >= 1");
        total += p.size_octets;
        if (p.index_in_frame >= lost_index_in_frame) suffix += p.size_octets;
    }
    return static_cast<double>(suffix) / static_cast<double>(total);
}

namespace {

std::map<int, std::vector<PacketRecord>> packets_by_frame(const StreamTrace& trace) {
    std::map<int, std::vector<PacketRecord>> grouped;
    for (const PacketRecord& p : trace.packets) grouped[p.frame_decode_index].push_back(p);
    return grouped;
}

}  // namespace

std::vector<LossImpact> effective_losses(const StreamTrace& trace) {
    require_valid(trace);
    const auto grouped = packets_by_frame(trace);

    // First lost packet per frame; contiguity is already validated, so the
    // lowest index_in_frame among the lost ones is the effective loss.
    std::map<int, int> first_lost;
    for (const PacketRecord& p : trace.packets) {
        if (!p.lost) continue;
        auto [it, inserted] = first_lost.emplace(p.frame_decode_index, p.index_in_frame);
        if (!inserted) it->second = std::min(it->second, p.index_in_frame);
    }

    std::vector<LossImpact> impacts;
    for (const PacketRecord& p : trace.packets) {
        if (!p.lost) continue;
        LossImpact impact;
        impact.packet = p;
        impact.effective = (first_lost.at(p.frame_decode_index) == p.index_in_frame);
        impact.xi = impact.effective ? xi_for_loss(grouped.at(p.frame_decode_index), p.index_in_frame) : 0.0;
        impacts.push_back(std::move(impact));
    }
    return impacts;
}

DependencyClosure dependency_closure(const std::vector<FrameMeta>& frames) {
    DependencyClosure closure;

    // Process one IDR-delimited window at a time; errors never cross IDR.
    std::size_t window_start = 0;
    while (window_start < frames.size()) {
        std::size_t window_end = window_start + 1;
        while (window_end < frames.size() && frames[window_end].frame_type != FrameType::IDR) ++window_end;

        std::map<int, std::size_t> slot_of;  // decode_index -> slot within window
        for (std::size_t i = window_start; i < window_end; ++i) slot_of[frames[i].decode_index] = i - window_start;

        const std::size_t n = window_end - window_start;
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (std::size_t i = window_start; i < window_end; ++i) {
            const std::size_t slot = i - window_start;
            for (int r : frames[i].direct_refs) {
                auto it = slot_of.find(r);
                if (it == slot_of.end()) continue;  // reference outside this closed window
                const std::size_t rs = it->second;
                if (rs >= slot)
                    throw ValidationError("dependency cycle: frame " + std::to_string(frames[i].decode_index) +
                                          " references a later frame");
                reach[slot][rs] = true;
                for (std::size_t k = 0; k < n; ++k)
                    if (reach[rs][k]) reach[slot][k] = true;
            }
        }
        for (std::size_t i = window_start; i < window_end; ++i) {
            const std::size_t slot = i - window_start;
            std::vector<int> ancestors;
            for (std::size_t k = 0; k < n; ++k)
                if (reach[slot][k]) ancestors.push_back(frames[window_start + k].decode_index);
            std::sort(ancestors.begin(), ancestors.end());
            closure.ancestors.emplace(frames[i].decode_index, std::move(ancestors));
        }
        window_start = window_end;
    }
    return closure;
}

std::map<int, double> effective_xi_by_frame(const StreamTrace& trace) {
    std::map<int, double> xi;
    for (const LossImpact& impact : effective_losses(trace))
        if (impact.effective) xi.emplace(impact.packet.frame_decode_index, impact.xi);

    // A frame carried by no packet at all was dropped wholesale upstream;
    // that is a first-packet loss for modeling purposes.
    const auto grouped = packets_by_frame(trace);
    for (const FrameMeta& f : trace.frames)
        if (grouped.find(f.decode_index) == grouped.end()) xi[f.decode_index] = 1.0;
    return xi;
}

XlrSeries estimate_xlr(const StreamTrace& trace) {
    require_valid(trace);
    const std::map<int, double> xi = effective_xi_by_frame(trace);
    const DependencyClosure closure = dependency_closure(trace.frames);

    std::vector<FrameXlr> per_frame;
    per_frame.reserve(trace.frames.size());
    for (const FrameMeta& f : trace.frames) {
        double estimate = 0.0;
        if (auto own = xi.find(f.decode_index); own != xi.end()) estimate = own->second;
        for (int ancestor : closure.of(f.decode_index))
            if (auto it = xi.find(ancestor); it != xi.end()) estimate = std::max(estimate, it->second);
        per_frame.push_back({f.decode_index, estimate});
    }
    XlrSeries series = make_series(std::move(per_frame), Provenance::NR);
    return series;
}

}  // namespace xlr
