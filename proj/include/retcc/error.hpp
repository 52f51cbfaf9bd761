#pragma once

#include <stdexcept>
#include <string>

namespace retcc {

/// Base class for all library-specific failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed file content. Messages name the byte offset of the defect.
struct ParseError : Error {
    using Error::Error;
};

/// Filesystem-level failure (missing file, unwritable path, short read).
struct IoError : Error {
    using Error::Error;
};

/// Intensity bounds collapsed (i_min == i_max), e.g. on a constant channel.
struct DegenerateBoundsError : Error {
    using Error::Error;
};

} // namespace retcc
