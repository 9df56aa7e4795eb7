#ifndef ORBIMORSE_ERROR_HPP
#define ORBIMORSE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbimorse {

enum class ErrorCode
{
    // exact_linalg / chain_complex
    DimensionMismatch,
    NotAComplex,
    ShapeMismatch,
    // morse_datum
    InvalidDatum,
    UnknownFlowCount,
    UnstablePoint,
    BoundarySquaredNonzero,
    NonIntegralCoefficient,
    // stabilization
    PointNotFound,
    PointAlreadyStable,
    SphereCountMismatch,
    InvalidSphereDatum,
    UnknownBuiltin,
    BadParams,
    // simplicial_oracle
    InvalidComplex,
    // flow_numerics
    SeedGridExhausted,
    DegenerateCritical,
    NonConvergentTrajectory,
    BrokenFlowDetected,
    UnstableEndpoint,
    IndexGapViolation,
    UnsupportedProfile,
    BumpTooWide,
    InvalidSurface,
    // io
    ParseError,
};

std::string_view to_string(ErrorCode code);

/**
 * Exception type thrown by every fallible operation in the library.
 * The code identifies the failure class; what() carries the details.
 */
class Error : public std::runtime_error
{
    public:
        Error(ErrorCode code, const std::string& message)
            : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
        {
        }

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
};

}   // namespace orbimorse

#endif
