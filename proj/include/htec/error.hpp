#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace htec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when no line applies.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    DimensionError(std::size_t expected, std::size_t actual)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(actual)) {}
};

/// A dense oracle or literal enumeration would exceed its memory budget.
class TooLarge : public Error {
public:
    using Error::Error;
};

/// The incidence bipartite graph is disconnected, so the Perron vector is not unique.
class NotConnected : public Error {
public:
    using Error::Error;
};

/// An iteration hit its cap. Carries the last diagnostics so a caller can decide
/// whether to loosen the tolerance.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, std::size_t iterations, double lower, double upper)
        : Error(what), iterations_(iterations), lower_(lower), upper_(upper) {}

    std::size_t iterations() const noexcept { return iterations_; }
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    std::size_t iterations_;
    double lower_;
    double upper_;
};

/// A rank correlation with a zero denominator (a constant input vector).
class UndefinedCorrelation : public Error {
public:
    using Error::Error;
};

}  // namespace htec
