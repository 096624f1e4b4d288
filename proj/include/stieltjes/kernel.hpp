#pragma once

#include "stieltjes/measure.hpp"

namespace stieltjes {

enum class KernelConstruction { StepOverDg, Example1Inverse, UserSupplied };

// A function with everywhere-zero Stieltjes derivative, together with how it
// was obtained. Step constructions are exact: zero quotients at jumps, local
// constancy elsewhere.
struct KernelElement {
    PiecewiseMap map;
    KernelConstruction construction = KernelConstruction::UserSupplied;
};

// f*(t) = f(t*) as a function: constant at the component value across C_g,
// f elsewhere.
PiecewiseMap star_map(const PiecewiseMap& f, const Derivator& g);

// Step function over the connected components of [a,b] minus D_g, one value
// per component, right-continuous at every jump by construction. Requires
// the D_g closure condition.
KernelElement step_kernel(const Derivator& g, const std::vector<double>& values);

// h(t) = [prod over s in [a,t] cap D_g of (1 + beta(s) dg(s))]^{-1}; the
// reciprocal of the running jump product, h(a) = 1 off D_g.
KernelElement example1_h(const PiecewiseMap& beta, const Derivator& g);
KernelElement example1_h(double beta_constant, const Derivator& g);

// Validates a user candidate (right-continuity at jumps, zero derivative on
// the default verification grid) and wraps it.
KernelElement user_kernel(const PiecewiseMap& f, const Derivator& g,
                          double tol = 1e-9);

// Zero-derivative verification on grid + jumps + N_g points + one interior
// representative per constancy component, cross-validated through the
// product identity (f g)'_g = f* g'_g with g'_g = 1.
bool is_kernel_member(const PiecewiseMap& f, const Derivator& g,
                      const std::vector<double>& grid, double tol = 1e-9);
bool is_kernel_member(const PiecewiseMap& f, const Derivator& g,
                      int grid_n = 256, double tol = 1e-9);

struct AdditiveDecomposition {
    PiecewiseMap ac_part;      // f(a) + indefinite integral of f'_g
    PiecewiseMap kernel_part;  // f - ac_part, vanishing at a
};

// f = h + rho with h in the fundamental-theorem class and rho'_g == 0,
// normalized by rho(a) = 0.
AdditiveDecomposition additive_decompose(const PiecewiseMap& f, const Derivator& g,
                                         double tol = Defaults::tol);

struct MultiplicativeDecomposition {
    PiecewiseMap kernel_part;  // rho = f / u
    PiecewiseMap ac_solution;  // u with u'_g = (f'_g / f*) u, u(a) = 1
};

MultiplicativeDecomposition multiplicative_decompose(const PiecewiseMap& f,
                                                     const Derivator& g,
                                                     double tol = Defaults::tol);

struct AeZeroReport {
    bool applicable = true;  // false when f is outside BD (premise unusable)
    bool held = true;
    std::string note;
};

// If f vanishes at every atom and on a mu_g-dense sample, it must vanish
// everywhere; reports whether the implication held on the grid.
AeZeroReport ae_zero_forces_zero_check(const PiecewiseMap& f, const Derivator& g,
                                       int grid_n = 256, double tol = 1e-9);

// Truncated witness with jumps at +-1/n (2 <= n <= depth), jump mass 2^-n,
// identity slope between jumps; declared as a stand-in for the accumulating
// limit object.
Derivator ae_witness_derivator(int depth);

// Right-continuous step witness: 1/m on [1/m, 1/(m-1)), mirrored on the
// negative side, identity fill on (-1/depth, 1/depth). Its derivative
// vanishes on every step piece and jump yet equals 1 at zero.
PiecewiseMap ae_witness_map(int depth);

}  // namespace stieltjes
