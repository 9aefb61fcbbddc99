#pragma once

#include <stdexcept>
#include <string>

namespace wm3d {

// Exit codes used by the command-line tool map onto these categories.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad flags or inconsistent command-line input.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Malformed or truncated files, key bundles, or sample data.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Frame/watermark/subband dimensions that cannot work together.
class GeometryError : public Error {
public:
    using Error::Error;
};

}  // namespace wm3d
