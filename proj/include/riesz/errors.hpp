#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

/// Argument outside the mathematical domain of an operation (poles, points
/// outside an ellipsoid, violated convergence domains).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or forbidden parameter (NaN, non-even degree, c a pole of 2F1).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance, diverged or overflowed.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested discretization exceeds the configured resource cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration (CLI layer).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_finite(double v, const char* what)
{
    if (!(v == v) || v - v != 0.0)
        throw ParameterError(std::string(what) + " must be finite");
}

} // namespace detail
} // namespace riesz
