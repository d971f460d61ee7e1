#pragma once

#include <stdexcept>
#include <string>

namespace kpp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside the admissible region (c < 2, tau outside the interval
/// an operation is defined on, non-finite input).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at (or across) a pole of a rational bound.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class ToleranceError : public Error {
public:
    using Error::Error;
};

/// A caller-side contract violation (bad grid, too few samples, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A computed value contradicts an inequality that must hold.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Derivative too small for a Schwarzian quotient.
class DegenerateDerivativeError : public Error {
public:
    using Error::Error;
};

/// Root lies on the counting contour even after inflation.
class ContourError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration input.
class ParseError : public Error {
public:
    /// line <= 0 marks a setting that did not come from a file.
    ParseError(int line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace kpp
