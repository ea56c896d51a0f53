#ifndef TCONE_ERRORS_HPP
#define TCONE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcone {

/// Base of every error raised by the library. All of them describe bad
/// input (shape mismatch, violated precondition, malformed text); a negative
/// mathematical answer is always a return value, never an exception.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    /// 1-based line number, 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace tcone

#endif // TCONE_ERRORS_HPP
