#include "tracekit/util/error.hpp"

namespace tracekit {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotInFamily: return "NotInFamily";
        case ErrorCode::NotUnimodularMatrix: return "NotUnimodularMatrix";
        case ErrorCode::NotInIdentityComponent: return "NotInIdentityComponent";
        case ErrorCode::OutOfChart: return "OutOfChart";
        case ErrorCode::FamilyMismatch: return "FamilyMismatch";
        case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorCode::NoInvariantMeasure: return "NoInvariantMeasure";
        case ErrorCode::BadSchedule: return "BadSchedule";
        case ErrorCode::QuadratureDidNotConverge: return "QuadratureDidNotConverge";
        case ErrorCode::UnsupportedChart: return "UnsupportedChart";
        case ErrorCode::NotCompactStabilizer: return "NotCompactStabilizer";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::IllConditionedFit: return "IllConditionedFit";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tracekit
