#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sclaw {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration, parameters, or labels (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mismatched grids or vector lengths.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Times not aligned to the path's micro-step lattice.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// Quadrature non-convergence, invalid initial data, degenerate fits.
class NumericsError : public Error {
public:
    using Error::Error;
};

/// Solution exceeded the stability guard (CLI exit code 3).
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, std::size_t step, double time)
        : Error(what), step_(step), time_(time) {}

    std::size_t step() const { return step_; }
    double time() const { return time_; }

private:
    std::size_t step_;
    double time_;
};

/// File system / serialization failures (CLI exit code 4).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sclaw
