#pragma once

#include <stdexcept>
#include <string>

namespace rqcert {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ZeroVector : public Error {
public:
    using Error::Error;
};

/// span{x, y} has dimension one (x and y numerically collinear).
class DegenerateSubspace : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class NotAnEigenvector : public Error {
public:
    using Error::Error;
};

/// The Rayleigh quotient sits on a point of the spectrum, so gap-based bounds are undefined.
class SpectrumCoincidence : public Error {
public:
    using Error::Error;
};

/// A bound was requested for inputs that do not satisfy its hypotheses.
class HypothesisViolation : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace rqcert
