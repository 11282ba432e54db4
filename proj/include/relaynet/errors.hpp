#pragma once

#include <stdexcept>
#include <string>

namespace relaynet {

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown by the document parser; the message carries a JSON-pointer style location.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an enumeration or table would exceed a configured cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace relaynet
