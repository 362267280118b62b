#include "xlr/trace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "xlr/errors.hpp"

namespace xlr {

const char* to_string(FrameType t) {
    switch (t) {
        case FrameType::IDR: return "IDR";
        case FrameType::I: return "I";
        case FrameType::P: return "P";
        case FrameType::B_ref: return "B_ref";
        case FrameType::B_nonref: return "B_nonref";
    }
    return "?";
}

std::optional<FrameType> frame_type_from_string(const std::string& s) {
    if (s == "IDR") return FrameType::IDR;
    if (s == "I") return FrameType::I;
    if (s == "P") return FrameType::P;
    if (s == "B_ref") return FrameType::B_ref;
    if (s == "B_nonref") return FrameType::B_nonref;
    return std::nullopt;
}

const char* to_string(StructureKind k) {
    switch (k) {
        case StructureKind::IPP: return "ipp";
        case StructureKind::IBBP: return "ibbp";
        case StructureKind::HIER_B2B1B2P: return "hier";
        case StructureKind::CUSTOM: return "custom";
    }
    return "?";
}

std::optional<StructureKind> structure_kind_from_string(const std::string& s) {
    if (s == "ipp") return StructureKind::IPP;
    if (s == "ibbp") return StructureKind::IBBP;
    if (s == "hier") return StructureKind::HIER_B2B1B2P;
    if (s == "custom") return StructureKind::CUSTOM;
    return std::nullopt;
}

namespace {

// Trailing display slots that do not fill a whole B-group are coded as a P
// chain so the window stays closed (no forward reference into the next IDR).
void append_tail_p_chain(PredictionStructure& s, int first_decode, int first_display, int last_ref_decode) {
    int prev = last_ref_decode;
    int display = first_display;
    for (int d = first_decode; d < s.period; ++d, ++display) {
        s.pattern.push_back({FrameType::P, display, {prev}});
        prev = d;
    }
}

}  // namespace

PredictionStructure make_structure(StructureKind kind, int period) {
    if (period < 1) throw ValidationError("structure period must be >= 1");
    if (kind == StructureKind::CUSTOM)
        throw ValidationError("CUSTOM structures require an explicit pattern; build the PredictionStructure directly");

    PredictionStructure s;
    s.kind = kind;
    s.period = period;
    s.pattern.reserve(static_cast<std::size_t>(period));
    s.pattern.push_back({FrameType::IDR, 0, {}});

    switch (kind) {
        case StructureKind::IPP: {
            for (int i = 1; i < period; ++i) s.pattern.push_back({FrameType::P, i, {i - 1}});
            break;
        }
        case StructureKind::IBBP: {
            // Display: I (B B P)*; decode: I (P B B)*; B-frames are never references.
            const int full_groups = (period - 1) / 3;
            int prev_ref = 0;
            for (int g = 0; g < full_groups; ++g) {
                const int p = 1 + 3 * g;  // decode slot of this group's P
                s.pattern.push_back({FrameType::P, 3 * g + 3, {prev_ref}});
                s.pattern.push_back({FrameType::B_nonref, 3 * g + 1, {prev_ref, p}});
                s.pattern.push_back({FrameType::B_nonref, 3 * g + 2, {prev_ref, p}});
                prev_ref = p;
            }
            append_tail_p_chain(s, 1 + 3 * full_groups, 3 * full_groups + 1, prev_ref);
            break;
        }
        case StructureKind::HIER_B2B1B2P: {
            // Display: I (B2 B1 B2 P)*; decode: I (P B1 B2 B2)*; B1 is a reference.
            const int full_groups = (period - 1) / 4;
            int prev_ref = 0;
            for (int g = 0; g < full_groups; ++g) {
                const int p = 1 + 4 * g;
                const int b1 = p + 1;
                s.pattern.push_back({FrameType::P, 4 * g + 4, {prev_ref}});
                s.pattern.push_back({FrameType::B_ref, 4 * g + 2, {prev_ref, p}});
                s.pattern.push_back({FrameType::B_nonref, 4 * g + 1, {prev_ref, b1}});
                s.pattern.push_back({FrameType::B_nonref, 4 * g + 3, {p, b1}});
                prev_ref = p;
            }
            append_tail_p_chain(s, 1 + 4 * full_groups, 4 * full_groups + 1, prev_ref);
            break;
        }
        case StructureKind::CUSTOM: break;  // unreachable
    }
    return s;
}

std::vector<FrameMeta> make_frames(const PredictionStructure& structure, int frame_count) {
    if (frame_count < 1) throw ValidationError("frame_count must be >= 1");
    if (structure.pattern.empty() || static_cast<int>(structure.pattern.size()) != structure.period)
        throw ValidationError("structure pattern size must equal its period");
    if (structure.pattern[0].type != FrameType::IDR)
        throw ValidationError("structure position 0 must be IDR");
    for (std::size_t i = 0; i < structure.pattern.size(); ++i)
        for (int r : structure.pattern[i].ref_offsets)
            if (r < 0 || r >= static_cast<int>(i))
                throw ValidationError("structure ref offset breaks decode-order causality at slot " +
                                      std::to_string(i));

    std::vector<FrameMeta> frames;
    frames.reserve(static_cast<std::size_t>(frame_count));
    for (int decode = 0; decode < frame_count; ++decode) {
        const int window = decode / structure.period;
        const int slot = decode % structure.period;
        const int base = window * structure.period;
        const PositionRule& rule = structure.pattern[static_cast<std::size_t>(slot)];
        FrameMeta meta;
        meta.decode_index = decode;
        meta.display_index = base + rule.display_offset;
        meta.frame_type = rule.type;
        meta.direct_refs.reserve(rule.ref_offsets.size());
        for (int r : rule.ref_offsets) meta.direct_refs.push_back(base + r);
        std::sort(meta.direct_refs.begin(), meta.direct_refs.end());
        frames.push_back(std::move(meta));
    }
    return frames;
}

std::vector<Violation> validate_trace(const StreamTrace& trace) {
    std::vector<Violation> out;
    auto flag = [&out](std::string msg) { out.push_back({std::move(msg)}); };

    if (trace.frames.empty()) {
        flag("trace has no frames");
        return out;
    }

    std::set<int> decode_indices;
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        const FrameMeta& f = trace.frames[i];
        if (i > 0 && trace.frames[i - 1].decode_index >= f.decode_index)
            flag("frame list not in decoding order at frame " + std::to_string(f.decode_index));
        if (!decode_indices.insert(f.decode_index).second)
            flag("duplicate decode_index " + std::to_string(f.decode_index));
    }

    if (trace.frames.front().frame_type != FrameType::IDR)
        flag("first frame " + std::to_string(trace.frames.front().decode_index) + " is not IDR");

    std::map<int, const FrameMeta*> by_decode;
    for (const FrameMeta& f : trace.frames) by_decode.emplace(f.decode_index, &f);

    for (const FrameMeta& f : trace.frames) {
        if (f.frame_type == FrameType::IDR && !f.direct_refs.empty())
            flag("IDR frame " + std::to_string(f.decode_index) + " has direct_refs");
        for (int r : f.direct_refs) {
            if (r >= f.decode_index)
                flag("frame " + std::to_string(f.decode_index) + " references frame " + std::to_string(r) +
                     " against decoding-order causality");
            auto it = by_decode.find(r);
            if (it == by_decode.end())
                flag("frame " + std::to_string(f.decode_index) + " references missing frame " + std::to_string(r));
            else if (it->second->frame_type == FrameType::B_nonref)
                flag("frame " + std::to_string(f.decode_index) + " references non-reference B frame " +
                     std::to_string(r));
        }
    }

    // Packets: contiguous 1..N per frame, global order = decode order then
    // index_in_frame, strictly increasing global_index.
    std::map<int, int> last_index_in_frame;
    const PacketRecord* prev = nullptr;
    for (const PacketRecord& p : trace.packets) {
        auto owner = by_decode.find(p.frame_decode_index);
        if (owner == by_decode.end()) {
            flag("packet " + std::to_string(p.global_index) + " belongs to missing frame " +
                 std::to_string(p.frame_decode_index));
            continue;
        }
        int& last = last_index_in_frame[p.frame_decode_index];
        if (p.index_in_frame != last + 1)
            flag("frame " + std::to_string(p.frame_decode_index) + " packet index_in_frame jumps from " +
                 std::to_string(last) + " to " + std::to_string(p.index_in_frame));
        last = p.index_in_frame;
        if (p.size_octets == 0)
            flag("packet " + std::to_string(p.global_index) + " has zero size");
        if (prev) {
            if (p.global_index <= prev->global_index)
                flag("packet " + std::to_string(p.global_index) + " breaks global_index ordering");
            if (p.frame_decode_index < prev->frame_decode_index)
                flag("packet " + std::to_string(p.global_index) + " breaks frame decoding order");
        }
        prev = &p;
    }
    return out;
}

void require_valid(const StreamTrace& trace) {
    const std::vector<Violation> violations = validate_trace(trace);
    if (violations.empty()) return;
    std::ostringstream msg;
    msg << "invalid trace (" << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << "): ";
    const std::size_t shown = std::min<std::size_t>(violations.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i) msg << "; ";
        msg << violations[i].message;
    }
    if (shown < violations.size()) msg << "; ...";
    throw ValidationError(msg.str());
}

}  // namespace xlr
