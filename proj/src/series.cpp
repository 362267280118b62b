#include "xlr/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "xlr/errors.hpp"

namespace xlr {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::FR: return "FR";
        case Provenance::NR: return "NR";
        case Provenance::ORACLE: return "ORACLE";
    }
    return "?";
}

std::vector<double> XlrSeries::values() const {
    std::vector<double> out;
    out.reserve(per_frame.size());
    for (const FrameXlr& f : per_frame) out.push_back(f.xlr);
    return out;
}

namespace {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    return buf;
}

}  // namespace

void write_series_csv(const XlrSeries& series, std::ostream& out) {
    out << "decode_index,xlr\n";
    for (const FrameXlr& f : series.per_frame) out << f.decode_index << ',' << format_value(f.xlr) << '\n';
    out << "mxlr," << format_value(series.mxlr) << '\n';
    out << "msxlr," << format_value(series.msxlr) << '\n';
}

void save_series_csv(const XlrSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write series CSV: " + path.string());
    write_series_csv(series, out);
    if (!out) throw IoError("short write to series CSV: " + path.string());
}

XlrSeries read_series_csv(std::istream& in, Provenance provenance, const std::string& source_name) {
    XlrSeries series;
    series.provenance = provenance;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false, saw_mxlr = false, saw_msxlr = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError(source_name + ":" + std::to_string(line_no) + ": expected two comma-separated fields");
        const std::string key = line.substr(0, comma);
        const std::string value = line.substr(comma + 1);
        if (!saw_header) {
            if (key != "decode_index" || value != "xlr")
                throw ValidationError(source_name + ":" + std::to_string(line_no) + ": missing 'decode_index,xlr' header");
            saw_header = true;
            continue;
        }
        try {
            if (key == "mxlr") {
                series.mxlr = std::stod(value);
                saw_mxlr = true;
            } else if (key == "msxlr") {
                series.msxlr = std::stod(value);
                saw_msxlr = true;
            } else {
                series.per_frame.push_back({std::stoi(key), std::stod(value)});
            }
        } catch (const std::exception&) {
            throw ValidationError(source_name + ":" + std::to_string(line_no) + ": bad numeric field in '" + line + "'");
        }
    }
    if (!saw_header) throw ValidationError(source_name + ": empty series CSV");
    if (!saw_mxlr || !saw_msxlr) throw ValidationError(source_name + ": missing mxlr/msxlr trailer");
    return series;
}

XlrSeries load_series_csv(const std::filesystem::path& path, Provenance provenance) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open series CSV: " + path.string());
    return read_series_csv(in, provenance, path.string());
}

}  // namespace xlr
