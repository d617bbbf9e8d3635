#pragma once

#include <stdexcept>
#include <string>

namespace adtarget {

/// Precondition violation on an argument (negative intensity, bad segment count, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A scenario or config field failed validation. `field()` names the offending key.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A solver could not produce an equilibrium (no bracket, no sign change, ...).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace adtarget
