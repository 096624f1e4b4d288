#pragma once

#include "stieltjes/piecewise.hpp"

namespace stieltjes {

// Which branch of the derivative definition applied at the queried point.
enum class DerivMode { TwoSided, RightAtJump, RightAtBn };

struct DerivFailure {
    enum class Kind { LeftRightMismatch, Diverges, Undefined };
    Kind kind = Kind::Undefined;
    double left = 0.0;   // stabilized one-sided estimates, when available
    double right = 0.0;
};

struct GDerivReport {
    std::optional<double> value;
    DerivMode mode = DerivMode::TwoSided;
    std::optional<DerivFailure> failure;
    // Self-reported resolution of the estimate: zero for algebraic jump
    // quotients, the stabilization band otherwise.
    double uncertainty = 0.0;
    bool ok() const { return value.has_value(); }
};

// Stieltjes derivative of f with respect to g at t. Jump points use the
// algebraic quotient (f(t+) - f(t)) / dg(t) with no limit estimation;
// constancy interiors recurse at the component's right endpoint; everywhere
// else one-sided difference quotients are driven through geometrically
// shrinking offsets with Richardson extrapolation and a Cauchy stabilization
// stop. Offsets where g has not moved (exact representation check) are
// excluded from the quotient domain.
GDerivReport g_derivative(const PiecewiseMap& f, const Derivator& g, double t,
                          double tol = Defaults::tol);

// Value-or-throw convenience; throws DerivativeMissing.
double g_derivative_value(const PiecewiseMap& f, const Derivator& g, double t,
                          double tol = Defaults::tol);

// f'_g as a function. Spans where both representations are elementary get
// closed-form segments (slope quotients, rescaled exponentials, constants on
// plateaus); anything else evaluates lazily through g_derivative. Breakpoint
// values are filled eagerly, exactly at jumps.
PiecewiseMap g_derivative_fn(const PiecewiseMap& f, const Derivator& g,
                             double tol = Defaults::tol);

std::vector<std::pair<double, GDerivReport>> derivative_grid(const PiecewiseMap& f,
                                                             const Derivator& g,
                                                             const std::vector<double>& grid,
                                                             double tol = Defaults::tol);

// (f1 f2)'_g(t) via the product formula; derivative failures propagate.
double product_rule(const PiecewiseMap& f1, const PiecewiseMap& f2, const Derivator& g,
                    double t, double tol = Defaults::tol);

// (f1 / f2)'_g(t); requires f2(t*) (f2(t*) + f2'_g(t) dg(t*)) != 0.
double quotient_rule(const PiecewiseMap& f1, const PiecewiseMap& f2, const Derivator& g,
                     double t, double tol = Defaults::tol);

// Outer real function with a declared classical derivative.
struct RealFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
};

// Checks the composition formula for h o f at t against the numeric
// derivative of the composed map; the applicable case is read from the point
// classification and, at jumps, from whether f is locally constant to the
// right of t in the representation.
bool chain_rule_check(const RealFunction& h, const PiecewiseMap& f, const Derivator& g,
                      double t, double tol = Defaults::tol);

// Composition h o f as a map (shared by the check and its oracle).
PiecewiseMap compose(const RealFunction& h, const PiecewiseMap& f);

}  // namespace stieltjes
