#include "frobpencil/error.hpp"

namespace frob {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
        case ErrorKind::NotMonic: return "NotMonic";
        case ErrorKind::OrderTooSmall: return "OrderTooSmall";
        case ErrorKind::IncompatibleExpansionPoints: return "IncompatibleExpansionPoints";
        case ErrorKind::ValuationError: return "ValuationError";
        case ErrorKind::LowerHalfPlane: return "LowerHalfPlane";
        case ErrorKind::PoleAtLatticePoint: return "PoleAtLatticePoint";
        case ErrorKind::PoleOnPath: return "PoleOnPath";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::InvalidModel: return "InvalidModel";
        case ErrorKind::NonSemisimplePoint: return "NonSemisimplePoint";
        case ErrorKind::RootCountMismatch: return "RootCountMismatch";
        case ErrorKind::LeftSemisimpleLocus: return "LeftSemisimpleLocus";
        case ErrorKind::KOutOfRange: return "KOutOfRange";
        case ErrorKind::NotPrimitive: return "NotPrimitive";
        case ErrorKind::SingularFrame: return "SingularFrame";
        case ErrorKind::FlatnessFailure: return "FlatnessFailure";
        case ErrorKind::NonIntegrableFrame: return "NonIntegrableFrame";
        case ErrorKind::PotentialityFailure: return "PotentialityFailure";
        case ErrorKind::FitFailure: return "FitFailure";
        case ErrorKind::SolveFailure: return "SolveFailure";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace frob
