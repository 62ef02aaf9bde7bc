#pragma once

#include <stdexcept>
#include <string>

namespace hil {

// Precondition violations carry the name of the violated contract so that
// callers (CLI, python bindings, tests) can match on it.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonIntegralPrefactor : Error {
    using Error::Error;
};
struct NonUnitLeadingTerm : Error {
    using Error::Error;
};
struct TruncationMismatch : Error {
    using Error::Error;
};
struct PoleAtNonPositiveInteger : Error {
    using Error::Error;
};
struct NonPositiveX : Error {
    using Error::Error;
};
struct EvenArgument : Error {
    using Error::Error;
};
struct UndefinedSymbol : Error {
    using Error::Error;
};
struct NonPositiveImaginaryPart : Error {
    using Error::Error;
};
struct InsufficientCoefficients : Error {
    using Error::Error;
};
struct InvalidCusp : Error {
    using Error::Error;
};
struct OddityViolation : Error {
    using Error::Error;
};
struct NonInvolutiveTwist : Error {
    using Error::Error;
};
struct IntegrationFailure : Error {
    using Error::Error;
};
struct BoundaryZeroSuspected : Error {
    using Error::Error;
};
struct DegenerateAveragedForm : Error {
    using Error::Error;
};
struct RegistryError : Error {
    using Error::Error;
};

}  // namespace hil
