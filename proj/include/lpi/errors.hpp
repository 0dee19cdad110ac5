#pragma once

#include <stdexcept>
#include <string>

namespace lpi {

/// Raised when text input cannot be parsed. Carries the 1-based line number
/// when the input came from a file (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised when data violates a mathematical guarantee (e.g. |a(p)| > 2).
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a request exceeds a hard implementation cap (degree, table size).
class CapError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace lpi
