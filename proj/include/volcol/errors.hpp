#pragma once

#include <stdexcept>
#include <string>

namespace volcol {

/// Base class for all volcol errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid problem definition, scheme, or solver configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : Error(what), achieved_error_(achieved_error) {}

    double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

/// Non-finite values or other numeric breakdown while solving.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace volcol
