#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace xlr {

enum class Provenance { FR, NR, ORACLE };

const char* to_string(Provenance p);

struct FrameXlr {
    int decode_index = 0;
    double xlr = 0.0;
};

/// Per-frame XLR values in decoding order plus the two pooled scores.
struct XlrSeries {
    std::vector<FrameXlr> per_frame;
    double mxlr = 0.0;
    double msxlr = 0.0;
    Provenance provenance = Provenance::FR;

    std::vector<double> values() const;
};

// CSV shape shared by the FR, NR and oracle paths so outputs diff directly:
//   decode_index,xlr
//   <index>,<value>
//   ...
//   mxlr,<value>
//   msxlr,<value>

void write_series_csv(const XlrSeries& series, std::ostream& out);
void save_series_csv(const XlrSeries& series, const std::filesystem::path& path);

/// Provenance is not carried in the CSV; the caller assigns it by role.
XlrSeries read_series_csv(std::istream& in, Provenance provenance, const std::string& source_name = "<stream>");
XlrSeries load_series_csv(const std::filesystem::path& path, Provenance provenance);

}  // namespace xlr
