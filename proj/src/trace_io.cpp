#include "xlr/trace_io.hpp"

#include <fstream>
#include <sstream>

#include "xlr/errors.hpp"

namespace xlr {

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line_no, const std::string& why) {
    throw ValidationError(source + ":" + std::to_string(line_no) + ": " + why);
}

long long parse_int(const std::string& source, std::size_t line_no, const std::string& token,
                    const char* field) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        parse_fail(source, line_no, std::string("bad ") + field + " '" + token + "'");
    }
}

}  // namespace

StreamTrace parse_trace(std::istream& in, const std::string& source_name) {
    StreamTrace trace;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;

        std::istringstream fields(line);
        std::string kind;
        fields >> kind;
        if (kind == "frame") {
            std::string decode, display, type, refs;
            if (!(fields >> decode >> display >> type >> refs))
                parse_fail(source_name, line_no, "frame record needs 4 fields");
            FrameMeta meta;
            meta.decode_index = static_cast<int>(parse_int(source_name, line_no, decode, "decode_index"));
            meta.display_index = static_cast<int>(parse_int(source_name, line_no, display, "display_index"));
            const auto ft = frame_type_from_string(type);
            if (!ft) parse_fail(source_name, line_no, "unknown frame type '" + type + "'");
            meta.frame_type = *ft;
            if (refs != "-") {
                std::istringstream ref_list(refs);
                std::string r;
                while (std::getline(ref_list, r, ','))
                    meta.direct_refs.push_back(static_cast<int>(parse_int(source_name, line_no, r, "ref")));
            }
            trace.frames.push_back(std::move(meta));
        } else if (kind == "packet") {
            std::string global, frame, index, size, lost;
            if (!(fields >> global >> frame >> index >> size >> lost))
                parse_fail(source_name, line_no, "packet record needs 5 fields");
            PacketRecord p;
            p.global_index = parse_int(source_name, line_no, global, "global_index");
            p.frame_decode_index = static_cast<int>(parse_int(source_name, line_no, frame, "frame_decode_index"));
            p.index_in_frame = static_cast<int>(parse_int(source_name, line_no, index, "index_in_frame"));
            const long long sz = parse_int(source_name, line_no, size, "size_octets");
            if (sz < 0) parse_fail(source_name, line_no, "negative size_octets");
            p.size_octets = static_cast<std::uint64_t>(sz);
            if (lost == "0")
                p.lost = false;
            else if (lost == "1")
                p.lost = true;
            else
                parse_fail(source_name, line_no, "lost flag must be 0 or 1, got '" + lost + "'");
            trace.packets.push_back(p);
        } else {
            parse_fail(source_name, line_no, "unknown record kind '" + kind + "'");
        }
        std::string extra;
        if (fields >> extra) parse_fail(source_name, line_no, "trailing field '" + extra + "'");
    }
    if (trace.frames.empty() && trace.packets.empty())
        throw ValidationError(source_name + ": no records found");
    return trace;
}

StreamTrace load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file: " + path.string());
    return parse_trace(in, path.string());
}

void serialize_trace(const StreamTrace& trace, std::ostream& out) {
    for (const FrameMeta& f : trace.frames) {
        out << "frame " << f.decode_index << ' ' << f.display_index << ' ' << to_string(f.frame_type) << ' ';
        if (f.direct_refs.empty()) {
            out << '-';
        } else {
            for (std::size_t i = 0; i < f.direct_refs.size(); ++i) {
                if (i) out << ',';
                out << f.direct_refs[i];
            }
        }
        out << '\n';
    }
    for (const PacketRecord& p : trace.packets) {
        out << "packet " << p.global_index << ' ' << p.frame_decode_index << ' ' << p.index_in_frame << ' '
            << p.size_octets << ' ' << (p.lost ? '1' : '0') << '\n';
    }
}

std::string serialize_trace(const StreamTrace& trace) {
    std::ostringstream out;
    serialize_trace(trace, out);
    return out.str();
}

void save_trace(const StreamTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write trace file: " + path.string());
    serialize_trace(trace, out);
    if (!out) throw IoError("short write to trace file: " + path.string());
}

}  // namespace xlr
