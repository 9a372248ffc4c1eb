#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symqual {

enum class ErrorCode {
    InvalidGraph,
    InvalidDrawing,
    GraphMismatch,
    NotBijective,
    AdjacencyViolated,
    KindUndetermined,
    KindMismatch,
    InvalidGroup,
    ParseError,
    NonFinite,
    DegeneratePointSet,
    NotNormalized,
    OrbitSizeMismatch,
    NoRotationalGenerator,
    SingularSystem,
    DisconnectedGraph,
    InvalidOuterFace,
    ConvergenceFailure,
    TooLarge,
    InvalidArgument,
    PlanInvalid,
    IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace symqual
