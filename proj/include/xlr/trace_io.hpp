#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "xlr/trace.hpp"

namespace xlr {

// Trace file grammar (UTF-8, line-delimited, '#' starts a comment line):
//   frame <decode_index> <display_index> <type> <ref,ref,...|->
//   packet <global_index> <frame_decode_index> <index_in_frame> <size_octets> <lost:0|1>
// Canonical form: all frame lines in decode order, then all packet lines in
// global order, single-space separated, no comments. serialize() emits
// canonical form, so serialize(parse(x)) == x for canonical inputs.

StreamTrace parse_trace(std::istream& in, const std::string& source_name = "<stream>");
StreamTrace load_trace(const std::filesystem::path& path);

void serialize_trace(const StreamTrace& trace, std::ostream& out);
std::string serialize_trace(const StreamTrace& trace);
void save_trace(const StreamTrace& trace, const std::filesystem::path& path);

}  // namespace xlr
