#include "wcc/error.hpp"

namespace wcc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::DiagonalChi: return "DiagonalChi";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::NonVanishingFirstMoment: return "NonVanishingFirstMoment";
    case ErrorKind::NotEigenoperator: return "NotEigenoperator";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::PositivityLost: return "PositivityLost";
    case ErrorKind::TraceDrift: return "TraceDrift";
    case ErrorKind::DegenerateSteadyState: return "DegenerateSteadyState";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotEnergyConserving: return "NotEnergyConserving";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

} // namespace wcc
