#pragma once

#include "stieltjes/kernel.hpp"

namespace stieltjes {

// First-order linear problem v'_g = beta v + forcing, v(a) = v0. The
// coefficient must be g-regressive: 1 + beta(t) dg(t) != 0 at every jump.
struct LinearProblem {
    Derivator g;
    PiecewiseMap beta;
    std::optional<PiecewiseMap> forcing;
    double v0 = 1.0;
};

// exp_g(p; t): product of (1 + p(s) dg(s)) over jumps in [a, t) times the
// exponential of the jump-free integral of p.
double g_exponential(const PiecewiseMap& p, const Derivator& g, double t,
                     double quad_tol = 1e-10);

// The same object as a function, with exact jump semigroup factors
// exp_g(p; t+) = (1 + p(t) dg(t)) exp_g(p; t) stored as right limits.
// Spans with constant p over affine g come out as closed-form exponentials.
PiecewiseMap g_exponential_map(const PiecewiseMap& p, const Derivator& g,
                               double quad_tol = 1e-10);

// Unique fundamental-theorem-class solution v = v0 exp_g(beta; .) of the
// homogeneous problem.
PiecewiseMap solve_homogeneous_ac(const LinearProblem& problem, double quad_tol = 1e-10);

// h v for a kernel multiplier with h(a) = 1: a further solution of the same
// homogeneous problem, distinct from v whenever h is nonconstant.
PiecewiseMap nonunique_solutions(const LinearProblem& problem, const KernelElement& h,
                                 double quad_tol = 1e-10);

// Variation-of-constants candidate for the forced problem, validated by a
// residual sweep before being returned.
PiecewiseMap solve_forced(const LinearProblem& problem, double tol = Defaults::tol,
                          int grid_n = Defaults::grid_n);

// max over grid points off C_g of |v'_g - beta v - forcing|.
double residual_check(const PiecewiseMap& v, const LinearProblem& problem,
                      int grid_n = Defaults::grid_n, double deriv_tol = 1e-9);

}  // namespace stieltjes
