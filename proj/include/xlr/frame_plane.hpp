#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>

namespace xlr {

/// A raw 8-bit luma plane: rows() == height, cols() == width, row-major so the
/// flat memory is raster order.
using FramePlane = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class RawLayout {
    LumaOnly,  // frame-sequential W*H luma planes
    Yuv420p,   // planar 4:2:0; chroma is skipped, comparison stays luma-only
};

/// Streams luma planes out of a raw video file. Truncation mid-frame is
/// reported with the offending byte offset.
class RawLumaReader {
public:
    RawLumaReader(const std::filesystem::path& path, int width, int height,
                  RawLayout layout = RawLayout::LumaOnly);

    /// Next luma plane, or nullopt at a clean end of file.
    std::optional<FramePlane> next();

    int width() const { return width_; }
    int height() const { return height_; }

    /// Frames delivered so far.
    int frames_read() const { return frames_read_; }

private:
    std::ifstream file_;
    std::filesystem::path path_;
    int width_;
    int height_;
    RawLayout layout_;
    int frames_read_ = 0;
    std::uint64_t offset_ = 0;
};

}  // namespace xlr
