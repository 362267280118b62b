#include "xlr/ingest.hpp"

#include <algorithm>
#include <fstream>

#include "xlr/errors.hpp"

namespace xlr {

namespace {

bool is_vcl_type(int nal_unit_type) { return nal_unit_type >= 1 && nal_unit_type <= 5; }

/// Reads exp-Golomb fields from an unescaped RBSP prefix.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    int read_bit() {
        const std::size_t byte = pos_ >> 3;
        if (byte >= bytes_.size()) throw ValidationError("truncated slice header");
        const int bit = (bytes_[byte] >> (7 - (pos_ & 7))) & 1;
        ++pos_;
        return bit;
    }

    std::uint32_t read_ue() {
        int zeros = 0;
        while (read_bit() == 0)
            if (++zeros > 32) throw ValidationError("exp-Golomb overflow (more than 32 leading zeros)");
        std::uint64_t suffix = 0;
        for (int i = 0; i < zeros; ++i) suffix = (suffix << 1) | static_cast<std::uint64_t>(read_bit());
        const std::uint64_t value = (1ull << zeros) - 1 + suffix;
        if (value > 0x7FFFFFFFull) throw ValidationError("exp-Golomb value out of range");
        return static_cast<std::uint32_t>(value);
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

/// Strips emulation-prevention bytes (00 00 03 -> 00 00) from a prefix.
std::vector<std::uint8_t> unescape_rbsp_prefix(std::span<const std::uint8_t> payload, std::size_t max_bytes) {
    std::vector<std::uint8_t> rbsp;
    rbsp.reserve(max_bytes);
    int zero_run = 0;
    for (std::size_t i = 0; i < payload.size() && rbsp.size() < max_bytes; ++i) {
        const std::uint8_t b = payload[i];
        if (zero_run >= 2 && b == 0x03) {
            zero_run = 0;
            continue;
        }
        zero_run = (b == 0x00) ? zero_run + 1 : 0;
        rbsp.push_back(b);
    }
    return rbsp;
}

std::uint64_t start_of_prefix(std::span<const std::uint8_t> stream, std::uint64_t pattern_pos) {
    // A zero immediately before 00 00 01 makes it the 4-byte form.
    return (pattern_pos > 0 && stream[pattern_pos - 1] == 0x00) ? pattern_pos - 1 : pattern_pos;
}

}  // namespace

std::vector<NalUnit> split_annexb(std::span<const std::uint8_t> stream) {
    std::vector<std::uint64_t> pattern_positions;
    for (std::size_t i = 0; i + 2 < stream.size(); ++i)
        if (stream[i] == 0x00 && stream[i + 1] == 0x00 && stream[i + 2] == 0x01) {
            pattern_positions.push_back(i);
            i += 2;
        }
    if (pattern_positions.empty()) throw ValidationError("no Annex-B start code found");

    std::vector<NalUnit> units;
    units.reserve(pattern_positions.size());
    for (std::size_t k = 0; k < pattern_positions.size(); ++k) {
        const std::uint64_t header = pattern_positions[k] + 3;
        const std::uint64_t end =
            (k + 1 < pattern_positions.size()) ? start_of_prefix(stream, pattern_positions[k + 1]) : stream.size();
        if (header >= end) throw ValidationError("empty NAL unit at byte offset " + std::to_string(header));
        NalUnit unit;
        unit.byte_offset = header;
        unit.size_octets = end - header;
        unit.start_code_len = static_cast<int>(pattern_positions[k] - start_of_prefix(stream, pattern_positions[k])) + 3;
        unit.nal_unit_type = stream[header] & 0x1F;
        unit.nal_ref_idc = (stream[header] >> 5) & 0x3;
        unit.is_vcl = is_vcl_type(unit.nal_unit_type);
        units.push_back(unit);
    }
    return units;
}

SliceHeader slice_type_of(const NalUnit& nal, std::span<const std::uint8_t> payload) {
    if (!nal.is_vcl) throw ValidationError("slice_type_of requires a VCL NAL unit");
    if (payload.size() < 2) throw ValidationError("truncated slice header");
    const std::vector<std::uint8_t> rbsp = unescape_rbsp_prefix(payload.subspan(1), 32);
    BitReader bits(rbsp);
    SliceHeader header;
    header.first_mb_in_slice = static_cast<int>(bits.read_ue());
    header.slice_type_raw = static_cast<int>(bits.read_ue());
    switch (header.slice_type_raw % 5) {
        case 0: header.type_hint = FrameType::P; break;
        case 1: header.type_hint = FrameType::B_nonref; break;  // refined by nal_ref_idc
        case 2: header.type_hint = FrameType::I; break;
        case 3: header.type_hint = FrameType::P; break;  // SP
        case 4: header.type_hint = FrameType::I; break;  // SI
    }
    return header;
}

namespace {

struct PendingFrame {
    std::uint64_t span_start = 0;
    std::uint64_t span_end = 0;
    FrameType observed_type = FrameType::IDR;
    int first_mb = 0;
};

FrameType observed_frame_type(const NalUnit& nal, const SliceHeader& header) {
    if (nal.nal_unit_type == 5) return FrameType::IDR;
    if (header.type_hint == FrameType::B_nonref)
        return nal.nal_ref_idc > 0 ? FrameType::B_ref : FrameType::B_nonref;
    return header.type_hint;
}

void packetize_fixed_mtu(StreamTrace& trace, const std::vector<std::uint64_t>& spans, std::uint64_t mtu) {
    std::int64_t global = 0;
    for (std::size_t f = 0; f < spans.size(); ++f) {
        std::uint64_t remaining = spans[f];
        int index = 1;
        while (remaining > 0) {
            const std::uint64_t size = std::min(remaining, mtu);
            trace.packets.push_back({global++, static_cast<int>(f), index++, size, false});
            remaining -= size;
        }
    }
}

void packetize_ts188(StreamTrace& trace, const std::vector<std::uint64_t>& spans) {
    // One 184-octet payload grid over the whole stream; a payload straddling
    // a frame boundary is split so each record owns bytes of exactly one frame.
    std::int64_t global = 0;
    std::uint64_t grid_used = 0;  // bytes consumed of the current payload slot
    std::vector<int> index_in_frame(spans.size(), 0);
    for (std::size_t f = 0; f < spans.size(); ++f) {
        std::uint64_t remaining = spans[f];
        while (remaining > 0) {
            const std::uint64_t slot_left = kTsPayloadOctets - grid_used;
            const std::uint64_t size = std::min(remaining, slot_left);
            trace.packets.push_back({global++, static_cast<int>(f), ++index_in_frame[f], size, false});
            remaining -= size;
            grid_used = (grid_used + size) % kTsPayloadOctets;
        }
    }
}

}  // namespace

IngestResult build_trace(std::span<const std::uint8_t> stream, const PredictionStructure& structure,
                         const PacketizationModel& pack) {
    if (structure.pattern.empty() || static_cast<int>(structure.pattern.size()) != structure.period)
        throw ValidationError("structure pattern size must equal its period");
    if (pack.mode == PackMode::FIXED_MTU && pack.mtu_octets < 64)
        throw ValidationError("mtu must be >= 64 octets, got " + std::to_string(pack.mtu_octets));

    const std::vector<NalUnit> units = split_annexb(stream);

    IngestResult result;
    auto warn = [&result](std::string msg) { result.warnings.push_back(std::move(msg)); };

    // Pass 1: frame boundaries, observed types, byte spans. Non-VCL units
    // (SPS/PPS/SEI) attach to the following frame's span: losing them
    // desynchronizes from the next picture onward.
    std::vector<PendingFrame> observed;
    std::optional<std::uint64_t> pending_span_start;
    for (const NalUnit& unit : units) {
        const std::uint64_t unit_span_start = unit.byte_offset - static_cast<std::uint64_t>(unit.start_code_len);
        if (!unit.is_vcl) {
            if (!pending_span_start) pending_span_start = unit_span_start;
            continue;
        }
        const SliceHeader header = slice_type_of(unit, stream.subspan(unit.byte_offset, unit.size_octets));
        PendingFrame frame;
        frame.span_start = pending_span_start.value_or(unit_span_start);
        frame.observed_type = observed_frame_type(unit, header);
        frame.first_mb = header.first_mb_in_slice;
        if (header.first_mb_in_slice != 0)
            warn("frame " + std::to_string(observed.size()) + ": slice with first_mb_in_slice=" +
                 std::to_string(header.first_mb_in_slice) + " treated as a sub-frame (one slice per frame assumed)");
        observed.push_back(frame);
        pending_span_start.reset();
    }
    if (observed.empty()) throw ValidationError("stream contains no VCL NAL units");
    if (pending_span_start)
        warn("trailing non-VCL units attached to the last frame");

    for (std::size_t f = 0; f < observed.size(); ++f)
        observed[f].span_end = (f + 1 < observed.size()) ? observed[f + 1].span_start : stream.size();

    if (observed.front().observed_type != FrameType::IDR)
        warn("stream does not start with an IDR frame; the trace will not validate");

    // Pass 2: stamp display order and references from the declared structure.
    // A type mismatch degrades the rest of the window to the fallback rule
    // (reference the most recent reference frame) so emitted refs stay sound.
    IngestResult& r = result;
    int window_base = 0;       // decode index of the current window's first frame
    int position = -1;         // slot within the declared pattern
    bool window_intact = true;
    int last_reference = -1;   // most recent reference frame, decode index
    for (std::size_t f = 0; f < observed.size(); ++f) {
        const int decode = static_cast<int>(f);
        const FrameType type = observed[f].observed_type;
        if (type == FrameType::IDR) {
            if (position >= 0 && position + 1 != structure.period)
                warn("window at frame " + std::to_string(window_base) + " has " + std::to_string(position + 1) +
                     " frames, declared period is " + std::to_string(structure.period));
            window_base = decode;
            position = 0;
            window_intact = true;
        } else if (position >= 0) {
            ++position;
        }

        FrameMeta meta;
        meta.decode_index = decode;
        meta.frame_type = type;

        const bool in_pattern = position >= 0 && position < structure.period;
        const PositionRule* rule = in_pattern ? &structure.pattern[static_cast<std::size_t>(position)] : nullptr;
        if (!in_pattern && position >= structure.period)
            warn("frame " + std::to_string(decode) + " exceeds the declared period " +
                 std::to_string(structure.period) + " without an IDR");
        if (rule && rule->type != type) {
            warn("frame " + std::to_string(decode) + " is " + to_string(type) + " but the declared structure expects " +
                 to_string(rule->type) + " at position " + std::to_string(position));
            window_intact = false;
        }

        if (rule && window_intact) {
            meta.display_index = window_base + rule->display_offset;
            for (int offset : rule->ref_offsets) meta.direct_refs.push_back(window_base + offset);
            std::sort(meta.direct_refs.begin(), meta.direct_refs.end());
        } else {
            meta.display_index = decode;
            if (!is_intra_type(type) && last_reference >= 0) meta.direct_refs.push_back(last_reference);
        }
        if (is_reference_type(type)) last_reference = decode;
        r.trace.frames.push_back(std::move(meta));
        r.frame_byte_spans.push_back(observed[f].span_end - observed[f].span_start);
    }
    r.trace.structure = structure;

    if (pack.mode == PackMode::FIXED_MTU)
        packetize_fixed_mtu(r.trace, r.frame_byte_spans, pack.mtu_octets);
    else
        packetize_ts188(r.trace, r.frame_byte_spans);
    return result;
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

}  // namespace xlr
