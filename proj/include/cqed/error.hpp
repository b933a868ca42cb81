#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed call: wrong dimensions, out-of-range indices, invalid parameters.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Bad or unreadable configuration (file, section, key, range).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The Liouvillian has no dissipation, so the steady state is not unique.
class NonUniqueSteadyState : public Error {
public:
    using Error::Error;
};

/// The trace-constrained linear system is numerically singular.
class NumericalDegeneracy : public Error {
public:
    NumericalDegeneracy(const std::string& what, double condition_estimate)
        : Error(what), condition_estimate_(condition_estimate) {}

    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Closed-form results requested outside the regime they were derived for.
class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

/// A closed-form denominator vanished.
class SingularParameters : public Error {
public:
    using Error::Error;
};

/// Time integration produced non-finite values.
class Instability : public Error {
public:
    Instability(const std::string& what, long step) : Error(what), step_(step) {}

    long step() const noexcept { return step_; }

private:
    long step_;
};

/// Too few samples for the requested analysis.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Export/import failures.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cqed
