#pragma once

#include <stdexcept>
#include <string>

namespace pabm {

/// Invalid argument: bad dimensions, out-of-domain parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Node index outside [1, n].
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Eigensolver or SVD failure.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pabm
