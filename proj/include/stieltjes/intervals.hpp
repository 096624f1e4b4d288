#pragma once

#include "stieltjes/gdiff.hpp"

namespace stieltjes {

struct IntervalMember {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;
    bool singleton() const { return lo == hi; }
    bool contains(double t) const {
        if (t < lo || t > hi) return false;
        if (t == lo && !lo_closed) return false;
        if (t == hi && !hi_closed) return false;
        return true;
    }
};

// Ordered decomposition of a complement set into maximal connected pieces.
// For derivators standing in for a totally disconnected limit object the
// finite members are kept and the flag plus membership predicate describe
// the limit.
struct IntervalFamily {
    std::vector<IntervalMember> members;
    bool totally_disconnected = false;
    std::function<bool(double)> limit_membership;
};

// Connected components of [a,b] minus C_g; closed intervals or singletons.
IntervalFamily family_I1(const Derivator& g);

// Connected components of [a,b] minus (C_g u N_g+ u D_g).
IntervalFamily family_I2(const Derivator& g);

enum class MvtFamily { I1, I2, Whole };

struct DominanceReport {
    bool ok = true;
    double worst_excess = 0.0;  // max of |f(s)-f(t)| - |h(s)-h(t)| over pairs
    double worst_s = 0.0;
    double worst_t = 0.0;
};

// Mean-value dominance |f(s)-f(t)| <= |h(s)-h(t)| + tol for grid pairs
// within each family member. The derivative hypothesis |f'_g| <= h'_g is
// gated on the grid first and violations throw HypothesisFailed.
DominanceReport mvt_dominance_check(const PiecewiseMap& f, const PiecewiseMap& h,
                                    const Derivator& g, MvtFamily family,
                                    int grid_n = 256, double tol = Defaults::tol);

struct BoundedMvtReport {
    bool ok = true;
    double worst_excess = 0.0;
    double worst_lo = 0.0;
};

// |f(d-) - f(c+)| <= sup_I |f'_g| (g(d-) - g(c+)) + tol per I2 member, with
// the end values resolved by each member's openness. The sampled sup is a
// lower bound of the true one, so a reported violation is a true violation.
BoundedMvtReport mvt_bounded_check(const PiecewiseMap& f, const Derivator& g,
                                   double tol = Defaults::tol, int grid_n = 256);

struct MeanSlopeReport {
    double slope = 0.0;
    double above_mass = 0.0;
    double below_mass = 0.0;
};

// mu_g-mass of {f'_g >= slope} and {f'_g <= slope} with slope the mean
// quotient (f(b)-f(a))/(g(b)-g(a)); both must be positive for functions in
// the fundamental-theorem class.
MeanSlopeReport ac_mean_slope_check(const PiecewiseMap& f, const Derivator& g,
                                    int samples = 256);

}  // namespace stieltjes
