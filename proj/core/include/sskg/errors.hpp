#pragma once

#include <stdexcept>
#include <string>

namespace sskg {

/// Raised when an input object violates a construction invariant
/// (negative mass, bad normalization, shape mismatch, ...).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a requested computation exceeds an enumeration guard or
/// a stated precondition makes the request infeasible.
class guard_error : public std::runtime_error {
public:
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an internal numeric procedure fails to converge or
/// produces an inconsistent result.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sskg
