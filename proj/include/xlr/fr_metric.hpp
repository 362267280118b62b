#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "xlr/errors.hpp"
#include "xlr/frame_plane.hpp"
#include "xlr/series.hpp"

namespace xlr {

enum class FrMode { EXACT, THRESHOLD };

/// THRESHOLD counts |O - D| >= threshold_q as impaired, for use when the
/// reference itself is only perceptually lossless. EXACT ignores threshold_q.
struct FrComparisonConfig {
    FrMode mode = FrMode::EXACT;
    int threshold_q = 16;
};

namespace detail {

inline void check_fr_config(const FrComparisonConfig& config) {
    if (config.mode == FrMode::THRESHOLD && (config.threshold_q < 1 || config.threshold_q > 255))
        throw ValidationError("threshold_q must be in [1,255], got " + std::to_string(config.threshold_q));
}

template <typename DerivedA, typename DerivedB>
void check_same_shape(const Eigen::ArrayBase<DerivedA>& a, const Eigen::ArrayBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("frame dimension mismatch: " + std::to_string(a.cols()) + "x" +
                              std::to_string(a.rows()) + " vs " + std::to_string(b.cols()) + "x" +
                              std::to_string(b.rows()));
    if (a.size() == 0) throw ValidationError("empty frame");
}

}  // namespace detail

/// Fraction of pixel positions that differ between original and distorted.
/// The numerator is an integer count; the single division happens at the end.
template <typename DerivedA, typename DerivedB>
double xlr_frame(const Eigen::ArrayBase<DerivedA>& original, const Eigen::ArrayBase<DerivedB>& distorted,
                 const FrComparisonConfig& config = {}) {
    detail::check_same_shape(original, distorted);
    detail::check_fr_config(config);
    Eigen::Index impaired = 0;
    if (config.mode == FrMode::EXACT) {
        impaired = (original.derived() != distorted.derived()).count();
    } else {
        impaired = ((original.derived().template cast<int>() - distorted.derived().template cast<int>()).abs() >=
                    config.threshold_q)
                       .count();
    }
    return static_cast<double>(impaired) / static_cast<double>(original.size());
}

/// 10*log10(255^2 / MSE) in dB; identical frames return the +infinity
/// sentinel, which serializes as the string "inf".
template <typename DerivedA, typename DerivedB>
double psnr_frame(const Eigen::ArrayBase<DerivedA>& original, const Eigen::ArrayBase<DerivedB>& distorted) {
    detail::check_same_shape(original, distorted);
    const std::int64_t sse =
        (original.derived().template cast<std::int64_t>() - distorted.derived().template cast<std::int64_t>())
            .square()
            .sum();
    if (sse == 0) return std::numeric_limits<double>::infinity();
    const double mse = static_cast<double>(sse) / static_cast<double>(original.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

/// Arithmetic mean of a per-frame XLR series.
double pool_mxlr(const std::vector<double>& series);

/// Mean of per-element square roots (the linear-dimension score).
double pool_msxlr(const std::vector<double>& series);

/// Per-frame XLR over two equal-length frame sequences plus both pooled
/// values; provenance FR. Frames are compared pairwise in order.
XlrSeries xlr_sequence(const std::vector<FramePlane>& original, const std::vector<FramePlane>& distorted,
                       const FrComparisonConfig& config = {});

/// Streaming variant feeding off two readers (used by the CLI).
XlrSeries xlr_sequence(RawLumaReader& original, RawLumaReader& distorted, const FrComparisonConfig& config = {});

/// Builds an XlrSeries from already-computed per-frame values.
XlrSeries make_series(std::vector<FrameXlr> per_frame, Provenance provenance);

}  // namespace xlr
