// errors.hpp: exception types shared by the analysis modules.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recnet {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration, detected before any computation.
class ConfigError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Sector frequency R(n) is not a positive real number.
class DegenerateFrequencyError : public Error {
public:
    DegenerateFrequencyError(int n, double kappa, double beta, double r_squared);
    int n;
    double kappa;
    double beta;
    double r_squared;
};

class TruncationError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    DivergenceError(std::size_t step, double magnitude);
    std::size_t step;
};

class ConstantSeriesError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class DisconnectedGraphError : public Error {
public:
    explicit DisconnectedGraphError(std::size_t components);
    std::size_t components;
};

class UndefinedTransitivityError : public Error {
public:
    using Error::Error;
};

class DegenerateVarianceError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace recnet
