#ifndef FINEGRAIN_ERROR_HPP
#define FINEGRAIN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgr {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An exhaustive oracle refuses an input above its configured bound.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Dimensions of two operands disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A circuit violates the gate whitelist or shape rules of its class.
class StructuralError : public Error {
public:
    using Error::Error;
};

} // namespace fgr

#endif
