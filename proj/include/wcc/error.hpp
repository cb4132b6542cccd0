#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wcc {

enum class ErrorKind {
    InvalidArgument,
    NonFinite,
    NonSquare,
    NonHermitian,
    DimensionMismatch,
    NotPositive,
    DiagonalChi,
    SupportViolation,
    NonVanishingFirstMoment,
    NotEigenoperator,
    StepTooLarge,
    PositivityLost,
    TraceDrift,
    DegenerateSteadyState,
    RankDeficient,
    Degenerate,
    NotEnergyConserving,
    ParseError,
    SchemaError,
    ValidationError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; kind() lets callers
// and tests distinguish the failure without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace wcc
