#pragma once

#include <stdexcept>
#include <string>

namespace singstep {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside the admissible range of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Time step too large for the requested scheme update to be well defined.
struct StepSizeViolation : Error {
    using Error::Error;
};

// A convolution kernel system with a vanishing leading coefficient.
struct SingularKernel : Error {
    using Error::Error;
};

// A bound or probe was requested outside its stated hypotheses.
struct HypothesisViolation : Error {
    using Error::Error;
};

// An order computation whose inputs underflowed or vanished.
struct DegenerateError : Error {
    using Error::Error;
};

// Zero pivot in a tridiagonal elimination.
struct LinearSolveFailure : Error {
    using Error::Error;
};

struct UnknownPreset : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace singstep
