#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace walkwait {

// Base of all domain errors. `name()` is a stable machine-readable tag
// (e.g. "SpeedOrderViolated") used by the CLI for messages and exit codes;
// `what()` is the human-readable explanation.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Invalid parameters or constraint violations (scenario fields, distribution
// parameters, brackets, config contents).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed input that never reached validation (bad JSON, bad spec string).
class ParseError : public Error {
public:
    using Error::Error;
};

// The residual-term model's gate d2/vw < t_b failed.
class AssumptionViolated : public Error {
public:
    using Error::Error;
};

// Quadrature could not reach the requested tolerance within its budget.
class NumericsError : public Error {
public:
    using Error::Error;
};

// Filesystem problem (unreadable config, unwritable output).
class IoError : public Error {
public:
    using Error::Error;
};

// Root bracket has no sign change; carries the endpoint values so callers
// can report which side dominates throughout.
class NoSignChange : public Error {
public:
    NoSignChange(double f_lo, double f_hi, const std::string& message)
        : Error("NoSignChange", message), f_lo_(f_lo), f_hi_(f_hi) {}

    double f_lo() const noexcept { return f_lo_; }
    double f_hi() const noexcept { return f_hi_; }

private:
    double f_lo_;
    double f_hi_;
};

}  // namespace walkwait
