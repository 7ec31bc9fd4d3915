#pragma once

#include <stdexcept>
#include <string>

namespace cforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A formal variable showed up where it would capture an existing occurrence.
struct VariableCollision : Error {
    using Error::Error;
};

// Structural problem while building an algebra or a map over it.
struct AlgebraError : Error {
    using Error::Error;
};

// Two spaces that were asked to interact do not share algebra/bound/parity.
struct SpaceMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg), line(line_), col(col_) {}
};

} // namespace cforge
