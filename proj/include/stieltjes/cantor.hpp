#pragma once

#include "stieltjes/piecewise.hpp"

namespace stieltjes {

// Rational with a power-of-three denominator. All staircase endpoints live
// here exactly; doubles appear only at the boundary with generic modules.
struct Triadic {
    std::int64_t num = 0;
    int pow3 = 0;  // value = num / 3^pow3

    double to_double() const;
    static std::int64_t pow3_value(int k);
};

// Step iterate F_n of the staircase recurrence (seed F_0 == 1): value of
// F_depth at x in [0,1]. Exact on plateau intervals; the argument is split
// against exact thirds, so triadic inputs classify exactly.
double cantor_g(double x, int depth);
double cantor_g(Triadic x, int depth);

struct CantorMembership {
    bool in_c = false;      // member of E_depth
    bool in_c_hat = false;  // member of the half-open refinement
};

// Membership in the depth-limited Cantor set and its half-open variant,
// decided by exact ternary-digit inspection of num/den.
CantorMembership cantor_membership(std::int64_t num, std::int64_t den, int depth);
CantorMembership cantor_membership(const Triadic& x, int depth);

// Continuous staircase approximation of the Cantor function as a derivator:
// affine risers on the 2^depth kept intervals, plateaus on the removed
// middle thirds. D_g is empty; C_g has 2^depth - 1 components. The object
// carries the declared-limit flag so closure_conditions answers for the true
// Cantor function.
Derivator cantor_derivator(int depth);

// Step iterate F_n as a candidate function: 2^n right-closed plateaus with
// dyadic values, right-continuous at its own jumps.
PiecewiseMap cantor_iterate_fn(int n);

// Plateau list of F_n: [lo, hi) carrying value; the last entry is closed.
struct CantorPlateau {
    Triadic lo;
    Triadic hi;
    double value = 0.0;
};
std::vector<CantorPlateau> cantor_plateaus(int n);

// Triadic grid {k/3^m} as doubles, bitwise identical to the breakpoints the
// derivator constructor produces.
std::vector<double> triadic_grid(int m);

}  // namespace stieltjes
