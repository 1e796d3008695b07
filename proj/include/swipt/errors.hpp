#pragma once

#include <stdexcept>
#include <string>

namespace swipt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside its documented domain. `field()` names the offending input.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

protected:
    struct FullMessage {};
    ValidationError(FullMessage, std::string field, const std::string& message)
        : Error(message), field_(std::move(field)) {}

private:
    std::string field_;
};

/// Parameters are valid but describe a configuration the closed-form analysis
/// cannot handle (e.g. theta in {0, 1}, where eta*theta*phi vanishes).
class DegenerateConfigError : public Error {
public:
    using Error::Error;
};

/// A quadrature or contour integral failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double err_estimate)
        : Error(what), best_(best_estimate), err_(err_estimate) {}
    double best_estimate() const noexcept { return best_; }
    double err_estimate() const noexcept { return err_; }

private:
    double best_;
    double err_;
};

/// Meijer-G request outside the supported classes or with inseparable poles.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace swipt
