#include "orbimorse/error.hpp"

namespace orbimorse {

std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::DimensionMismatch:       return "DimensionMismatch";
        case ErrorCode::NotAComplex:             return "NotAComplex";
        case ErrorCode::ShapeMismatch:           return "ShapeMismatch";
        case ErrorCode::InvalidDatum:            return "InvalidDatum";
        case ErrorCode::UnknownFlowCount:        return "UnknownFlowCount";
        case ErrorCode::UnstablePoint:           return "UnstablePoint";
        case ErrorCode::BoundarySquaredNonzero:  return "BoundarySquaredNonzero";
        case ErrorCode::NonIntegralCoefficient:  return "NonIntegralCoefficient";
        case ErrorCode::PointNotFound:           return "PointNotFound";
        case ErrorCode::PointAlreadyStable:      return "PointAlreadyStable";
        case ErrorCode::SphereCountMismatch:     return "SphereCountMismatch";
        case ErrorCode::InvalidSphereDatum:      return "InvalidSphereDatum";
        case ErrorCode::UnknownBuiltin:          return "UnknownBuiltin";
        case ErrorCode::BadParams:               return "BadParams";
        case ErrorCode::InvalidComplex:          return "InvalidComplex";
        case ErrorCode::SeedGridExhausted:       return "SeedGridExhausted";
        case ErrorCode::DegenerateCritical:      return "DegenerateCritical";
        case ErrorCode::NonConvergentTrajectory: return "NonConvergentTrajectory";
        case ErrorCode::BrokenFlowDetected:      return "BrokenFlowDetected";
        case ErrorCode::UnstableEndpoint:        return "UnstableEndpoint";
        case ErrorCode::IndexGapViolation:       return "IndexGapViolation";
        case ErrorCode::UnsupportedProfile:      return "UnsupportedProfile";
        case ErrorCode::BumpTooWide:             return "BumpTooWide";
        case ErrorCode::InvalidSurface:          return "InvalidSurface";
        case ErrorCode::ParseError:              return "ParseError";
    }
    return "UnknownError";
}

}   // namespace orbimorse
