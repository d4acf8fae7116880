#ifndef MMBN_ERRORS_HPP
#define MMBN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmbn {

enum class ErrorCode {
    // structure / model
    CycleDetected,
    BadArity,
    BadParentIndex,
    BadClassVar,
    InvalidAssignment,
    MissingEvidence,
    // margin assembly
    LabelSpaceTooLarge,
    NonpositiveGamma,
    DimensionMismatch,
    // solver
    InfeasiblePoint,
    LinearSolveFailure,
    NoFeasibleStart,
    // renormalization
    NotRenormalizable,
    NotSubnormalized,
    NotNormalized,
    EvidenceSpaceTooLarge,
    // multivariate
    NotAChain,
    InvalidLabelVector,
    // synthetic data
    BadBeta,
    BadName,
    BadSize,
    // datasets / experiments
    SchemaMismatch,
    BadFile,
    BadPlan,
};

const char* error_code_name(ErrorCode code);

// All recoverable failures surface as this exception; `code` identifies
// the condition so callers and tests can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

}  // namespace mmbn

#endif
