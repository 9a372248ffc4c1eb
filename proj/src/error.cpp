#include "symqual/error.hpp"

namespace symqual {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidDrawing: return "InvalidDrawing";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::AdjacencyViolated: return "AdjacencyViolated";
    case ErrorCode::KindUndetermined: return "KindUndetermined";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegeneratePointSet: return "DegeneratePointSet";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::OrbitSizeMismatch: return "OrbitSizeMismatch";
    case ErrorCode::NoRotationalGenerator: return "NoRotationalGenerator";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::InvalidOuterFace: return "InvalidOuterFace";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PlanInvalid: return "PlanInvalid";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace symqual
