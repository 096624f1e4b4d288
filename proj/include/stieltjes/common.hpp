#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace stieltjes {

enum class ErrorCode {
    MonotonicityViolation,
    LeftContinuityViolation,
    EndpointHypothesisViolation,
    OutOfDomain,
    DomainMismatch,
    UnboundedIntegrand,
    IntegrationFailure,
    DenominatorVanishes,
    CaseUndetermined,
    ClosureConditionFailed,
    RightContinuityViolation,
    RegressivityViolation,
    ZeroDenominator,
    DerivativeMissing,
    ResidualTooLarge,
    KernelViolation,
    InitialValueMismatch,
    DegenerateDenominator,
    HypothesisFailed,
    BadInput,
};

const char* error_code_name(ErrorCode code);

class StieltjesError : public std::runtime_error {
public:
    StieltjesError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw StieltjesError(code, what);
}

// Default knobs; every caller-facing operation takes explicit overrides.
struct Defaults {
    static constexpr double tol = 1e-8;
    static constexpr int grid_n = 1024;
    // Exact-equality slack for g-values read off the representation. Plateau
    // levels and breakpoint values are reproduced bit-for-bit, so this only
    // absorbs the last-ulp noise of affine/exp evaluation.
    static constexpr double g_equal_eps = 1e-13;
};

inline std::vector<double> uniform_grid(double a, double b, int n) {
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) pts.push_back(a + (b - a) * (static_cast<double>(i) / n));
    pts.back() = b;
    return pts;
}

// Sorted union with exact dedup; inputs need not be sorted.
std::vector<double> merge_points(std::vector<double> pts);

inline bool nearly_equal(double x, double y, double eps) { return std::fabs(x - y) <= eps; }

}  // namespace stieltjes
