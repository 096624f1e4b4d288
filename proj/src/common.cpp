#include "stieltjes/common.hpp"

#include <algorithm>

namespace stieltjes {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
        case ErrorCode::LeftContinuityViolation: return "LeftContinuityViolation";
        case ErrorCode::EndpointHypothesisViolation: return "EndpointHypothesisViolation";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::UnboundedIntegrand: return "UnboundedIntegrand";
        case ErrorCode::IntegrationFailure: return "IntegrationFailure";
        case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
        case ErrorCode::CaseUndetermined: return "CaseUndetermined";
        case ErrorCode::ClosureConditionFailed: return "ClosureConditionFailed";
        case ErrorCode::RightContinuityViolation: return "RightContinuityViolation";
        case ErrorCode::RegressivityViolation: return "RegressivityViolation";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::DerivativeMissing: return "DerivativeMissing";
        case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorCode::KernelViolation: return "KernelViolation";
        case ErrorCode::InitialValueMismatch: return "InitialValueMismatch";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::HypothesisFailed: return "HypothesisFailed";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "UnknownError";
}

std::vector<double> merge_points(std::vector<double> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace stieltjes
