#pragma once

#include <stdexcept>
#include <string>

namespace xlr {

/// Malformed or inconsistent domain data (bad trace, shape mismatch, bad params).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// File system and stream failures (missing file, short read, unparseable bytes).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xlr
