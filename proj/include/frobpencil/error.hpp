#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frob {

enum class ErrorKind {
    ZeroPolynomial,
    NonConvergence,
    InsufficientTruncation,
    NotMonic,
    OrderTooSmall,
    IncompatibleExpansionPoints,
    ValuationError,
    LowerHalfPlane,
    PoleAtLatticePoint,
    PoleOnPath,
    QuadratureFailure,
    InvalidModel,
    NonSemisimplePoint,
    RootCountMismatch,
    LeftSemisimpleLocus,
    KOutOfRange,
    NotPrimitive,
    SingularFrame,
    FlatnessFailure,
    NonIntegrableFrame,
    PotentialityFailure,
    FitFailure,
    SolveFailure,
    ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can turn it into a failed check instead of a crash.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace frob
