#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gv {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grammar violation while parsing; position is a 0-based byte offset.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Precondition violation: bad indices, chart mismatch, missing assignment, ...
struct DomainError : Error {
    using Error::Error;
};

// Division by zero or by an expression that is not invertible in the
// coefficient ring.
struct ArithmeticError : Error {
    using Error::Error;
};

} // namespace gv
