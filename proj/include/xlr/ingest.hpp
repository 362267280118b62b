#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xlr/trace.hpp"

namespace xlr {

/// One Annex-B NAL unit. byte_offset points at the NAL header (just past the
/// start code); size_octets runs to the next start code or end of stream.
/// start_code_len is kept so frame byte spans can include the prefix.
struct NalUnit {
    std::uint64_t byte_offset = 0;
    std::uint64_t size_octets = 0;
    int start_code_len = 0;
    int nal_unit_type = 0;  // 5-bit code
    int nal_ref_idc = 0;
    bool is_vcl = false;
};

enum class PackMode { FIXED_MTU, TS188 };

/// FIXED_MTU restarts packetization at each frame boundary (RTP-style).
/// TS188 slices the whole stream into 188-octet transport packets with
/// 184-octet payloads; payloads straddling a frame boundary are split so each
/// record belongs to exactly one frame.
struct PacketizationModel {
    PackMode mode = PackMode::FIXED_MTU;
    std::uint64_t mtu_octets = 1400;
};

inline constexpr std::uint64_t kTsPacketOctets = 188;
inline constexpr std::uint64_t kTsPayloadOctets = 184;

/// Locates every 3- or 4-byte start code. Emulation-prevention bytes are left
/// intact at this layer. Throws when no start code exists.
std::vector<NalUnit> split_annexb(std::span<const std::uint8_t> stream);

struct SliceHeader {
    int first_mb_in_slice = 0;
    int slice_type_raw = 0;
    FrameType type_hint = FrameType::I;  // I/P/B only; IDR comes from the NAL type
};

/// Decodes first_mb_in_slice and slice_type from the first bytes of a VCL
/// NAL payload (emulation-prevention unescaped over the first 32 bytes).
SliceHeader slice_type_of(const NalUnit& nal, std::span<const std::uint8_t> payload);

struct IngestResult {
    StreamTrace trace;
    std::vector<std::string> warnings;
    std::vector<std::uint64_t> frame_byte_spans;  // per decode_index
};

/// Groups VCL NALs into frames, types them from the bitstream, fills display
/// order and references from the declared structure, and synthesizes packet
/// records per the packetization model. Pattern mismatches are warnings, not
/// failures; the bitstream wins.
IngestResult build_trace(std::span<const std::uint8_t> stream, const PredictionStructure& structure,
                         const PacketizationModel& pack);

std::vector<std::uint8_t> read_binary_file(const std::string& path);

}  // namespace xlr
