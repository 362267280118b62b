#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xlr {

enum class FrameType { IDR, I, P, B_ref, B_nonref };

const char* to_string(FrameType t);
std::optional<FrameType> frame_type_from_string(const std::string& s);

inline bool is_reference_type(FrameType t) { return t != FrameType::B_nonref; }
inline bool is_intra_type(FrameType t) { return t == FrameType::IDR || t == FrameType::I; }

/// One coded picture. decode_index orders transmission, display_index is the
/// POC-like presentation slot. direct_refs holds decode indices of the frames
/// this one predicts from (empty for intra).
struct FrameMeta {
    int decode_index = 0;
    int display_index = 0;
    FrameType frame_type = FrameType::IDR;
    std::vector<int> direct_refs;
};

/// One transmitted packet. index_in_frame is 1-based within the owning frame;
/// packets travel in frame decoding order, then index_in_frame.
struct PacketRecord {
    std::int64_t global_index = 0;
    int frame_decode_index = 0;
    int index_in_frame = 1;
    std::uint64_t size_octets = 0;
    bool lost = false;
};

enum class StructureKind { IPP, IBBP, HIER_B2B1B2P, CUSTOM };

const char* to_string(StructureKind k);
std::optional<StructureKind> structure_kind_from_string(const std::string& s);

/// One decode-order slot of a prediction structure period. Offsets are
/// relative to the window's first frame: display_offset in display order,
/// ref_offsets in decode order.
struct PositionRule {
    FrameType type = FrameType::IDR;
    int display_offset = 0;
    std::vector<int> ref_offsets;
};

/// Declarative closed-GOP pattern. Position 0 is always IDR; P-frames
/// reference the previous I/P and B-frames the surrounding reference frames.
struct PredictionStructure {
    StructureKind kind = StructureKind::IPP;
    int period = 25;
    std::vector<PositionRule> pattern;  // decode order, size == period
};

/// Builds the named pattern for the given period. Periods that do not fill a
/// whole number of B-groups end the window with a P chain.
PredictionStructure make_structure(StructureKind kind, int period);

/// Stamps repeated windows of the structure onto frame_count frames,
/// truncating the last window in decode order (always causally safe).
std::vector<FrameMeta> make_frames(const PredictionStructure& structure, int frame_count);

/// The NR estimator's entire input: frame metadata plus the packet stream.
struct StreamTrace {
    std::vector<FrameMeta> frames;     // decode order
    std::vector<PacketRecord> packets; // global order
    std::optional<PredictionStructure> structure;
};

struct Violation {
    std::string message;
};

/// Total check of the trace invariants; violations are data, not failures.
/// Empty result means the trace is well formed.
std::vector<Violation> validate_trace(const StreamTrace& trace);

/// Throws ValidationError listing the first violations, if any.
void require_valid(const StreamTrace& trace);

}  // namespace xlr
