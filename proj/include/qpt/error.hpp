#pragma once

#include <stdexcept>

namespace qpt {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A length that must be a power of two (or meet a minimum) is not.
struct invalid_size_error : error {
    using error::error;
};

// Malformed textual or binary input: vector files, PGM headers,
// truncated pixel payloads, out-of-range sample values.
struct parse_error : error {
    using error::error;
};

// The filesystem said no: missing file, unreadable stream, failed write.
struct io_error : error {
    using error::error;
};

// A state or window has zero norm and cannot be normalized, or a
// conditional distribution was requested on a zero-probability prefix.
struct normalization_error : error {
    using error::error;
};

}  // namespace qpt
