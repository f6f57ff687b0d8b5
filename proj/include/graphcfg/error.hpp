#pragma once

#include <stdexcept>
#include <string>

namespace graphcfg {

// Base of the library's error taxonomy; the CLI maps any of these to exit 1.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based, 0 when unknown.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg, int line = 0)
        : error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_ = 0;
};

// Precondition violation: bad arguments or unsupported input shape.
class invalid_argument : public error {
public:
    using error::error;
};

// A configurable cap (cell count, matrix size, state count) was exceeded.
// Hitting a cap is always an explicit error, never a silent truncation.
class resource_error : public error {
public:
    using error::error;
};

} // namespace graphcfg
