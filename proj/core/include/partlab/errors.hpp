#pragma once

#include <stdexcept>

namespace partlab {

// Input outside the mathematical domain of an operation (m < 3, d <= 0, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Lookup past the end of a computed table or range.
struct OutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// An enumeration or oracle was asked to run past its configured cap.
struct CapExceeded : std::length_error {
    using std::length_error::length_error;
};

// A table build would exceed the configured memory budget.
struct ResourceLimit : std::length_error {
    using std::length_error::length_error;
};

// A partition cannot be encoded in the requested number of flips.
struct NotRepresentable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed serialized input (flip strings, partition strings, cache files).
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace partlab
