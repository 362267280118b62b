#include "xlr/fr_metric.hpp"

#include <algorithm>

namespace xlr {

double pool_mxlr(const std::vector<double>& series) {
    if (series.empty()) throw ValidationError("cannot pool an empty series");
    double sum = 0.0;
    for (double v : series) sum += v;
    return sum / static_cast<double>(series.size());
}

double pool_msxlr(const std::vector<double>& series) {
    if (series.empty()) throw ValidationError("cannot pool an empty series");
    double sum = 0.0;
    for (double v : series) {
        if (v < 0.0) throw ValidationError("pool_msxlr needs non-negative values, got " + std::to_string(v));
        sum += std::sqrt(v);
    }
    return sum / static_cast<double>(series.size());
}

XlrSeries make_series(std::vector<FrameXlr> per_frame, Provenance provenance) {
    XlrSeries series;
    series.per_frame = std::move(per_frame);
    series.provenance = provenance;
    std::vector<double> values;
    values.reserve(series.per_frame.size());
    for (const FrameXlr& f : series.per_frame) values.push_back(f.xlr);
    series.mxlr = pool_mxlr(values);
    series.msxlr = pool_msxlr(values);
    return series;
}

XlrSeries xlr_sequence(const std::vector<FramePlane>& original, const std::vector<FramePlane>& distorted,
                       const FrComparisonConfig& config) {
    if (original.size() != distorted.size())
        throw ValidationError("frame count mismatch: " + std::to_string(original.size()) + " vs " +
                              std::to_string(distorted.size()));
    if (original.empty()) throw ValidationError("empty sequence");
    std::vector<FrameXlr> per_frame;
    per_frame.reserve(original.size());
    for (std::size_t i = 0; i < original.size(); ++i)
        per_frame.push_back({static_cast<int>(i), xlr_frame(original[i], distorted[i], config)});
    return make_series(std::move(per_frame), Provenance::FR);
}

XlrSeries xlr_sequence(RawLumaReader& original, RawLumaReader& distorted, const FrComparisonConfig& config) {
    std::vector<FrameXlr> per_frame;
    int index = 0;
    for (;;) {
        auto o = original.next();
        auto d = distorted.next();
        if (!o && !d) break;
        if (!o || !d)
            throw ValidationError("frame count mismatch: one stream ended after " + std::to_string(index) +
                                  " frames");
        per_frame.push_back({index, xlr_frame(*o, *d, config)});
        ++index;
    }
    if (per_frame.empty()) throw ValidationError("empty sequence");
    return make_series(std::move(per_frame), Provenance::FR);
}

}  // namespace xlr
