#pragma once

#include <stdexcept>
#include <string>

namespace brc {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or malformed input. CLI maps this to exit code 2.
struct ParamError : Error {
    using Error::Error;
};

/// Decoding gave up: the fragment multiset is not explainable within the
/// break budget the code was built for. CLI maps this to exit code 1.
struct DecodeFailure : Error {
    using Error::Error;
};

/// Decoding detected mutually inconsistent evidence (conflicting writes,
/// duplicate signature rows). A strict subclass of DecodeFailure so callers
/// that only care about success/failure need a single catch.
struct DecodeConflict : DecodeFailure {
    using DecodeFailure::DecodeFailure;
};

} // namespace brc
