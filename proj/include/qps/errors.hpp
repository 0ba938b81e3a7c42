#pragma once

#include <stdexcept>
#include <string>

namespace qps {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An expression refers to a symbol the current chart does not provide.
struct SymbolError : Error {
    using Error::Error;
};

/// Invalid parameter value (beta = 0, hbar >= beta, ...).
struct ParameterError : Error {
    using Error::Error;
};

/// Argument outside the admissible region of a map or special function.
struct DomainError : Error {
    using Error::Error;
};

/// Metric or bivector hit a singular point / degenerate constraint matrix.
struct SingularError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

struct SizeError : Error {
    using Error::Error;
};

/// A verified-conjecture construction failed its residual gate.
struct ConstructionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int column)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line(line),
          column(column) {}
    int line;
    int column;
};

}  // namespace qps
