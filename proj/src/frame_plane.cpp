#include "xlr/frame_plane.hpp"

#include <string>

#include "xlr/errors.hpp"

namespace xlr {

RawLumaReader::RawLumaReader(const std::filesystem::path& path, int width, int height, RawLayout layout)
    : file_(path, std::ios::binary), path_(path), width_(width), height_(height), layout_(layout) {
    if (width < 1 || height < 1)
        throw ValidationError("frame dimensions must be >= 1x1, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    if (layout == RawLayout::Yuv420p && (width % 2 != 0 || height % 2 != 0))
        throw ValidationError("yuv420p requires even dimensions, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    if (!file_) throw IoError("cannot open raw video file: " + path.string());
}

std::optional<FramePlane> RawLumaReader::next() {
    const std::streamsize luma_bytes = static_cast<std::streamsize>(width_) * height_;
    FramePlane plane(height_, width_);
    file_.read(reinterpret_cast<char*>(plane.data()), luma_bytes);
    const std::streamsize got = file_.gcount();
    if (got == 0 && file_.eof()) return std::nullopt;
    if (got < luma_bytes)
        throw IoError(path_.string() + ": truncated mid-frame at byte offset " + std::to_string(offset_ + got) +
                      " (frame " + std::to_string(frames_read_) + " needs " + std::to_string(luma_bytes) + " bytes)");
    offset_ += static_cast<std::uint64_t>(luma_bytes);
    if (layout_ == RawLayout::Yuv420p) {
        const std::streamsize chroma_bytes = luma_bytes / 2;  // two quarter-size planes
        file_.ignore(chroma_bytes);
        const std::streamsize skipped = file_.gcount();
        if (skipped < chroma_bytes)
            throw IoError(path_.string() + ": truncated mid-frame at byte offset " +
                          std::to_string(offset_ + skipped) + " (frame " + std::to_string(frames_read_) +
                          " chroma incomplete)");
        offset_ += static_cast<std::uint64_t>(chroma_bytes);
    }
    ++frames_read_;
    return plane;
}

}  // namespace xlr
