#pragma once

#include <stdexcept>
#include <string>

namespace chshlab {

/// Input outside an operation's mathematical domain (non-finite angle, empty grid, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Bad selector or option value supplied by a caller (unknown format, unknown series kind).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested diffraction order has no propagating maximum (J * lambda / d > 1).
class EvanescentOrderError : public DomainError {
public:
    using DomainError::DomainError;
};

/// CSV header does not contain a mapped column.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed data row; only thrown in strict ingestion mode.
class RowError : public std::runtime_error {
public:
    RowError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chshlab
