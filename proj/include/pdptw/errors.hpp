#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdptw {

/// Raised when a Li & Lim text stream cannot be turned into an Instance.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A precondition of an operation was breached by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Lower bounds are undefined (no couples, or no positive distance).
class BoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A dynamic couple could not be placed on any vehicle.
class InsertionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The exhaustive oracle refuses instances above its size guard.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad GA configuration or key-value file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pdptw
