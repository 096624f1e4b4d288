#pragma once

#include "stieltjes/gdiff.hpp"

namespace stieltjes {

// Half-open interval [lo, hi); the convention that makes mu additive.
struct GInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// mu_g([lo, hi)) = g(hi) - g(lo). Singleton mass is delta(g, t).
double mu(const Derivator& g, const GInterval& interval);

struct IntegrateOptions {
    double tol = 1e-10;        // absolute quadrature budget per smooth span
    bool skip_jumps = false;   // integrate over [lo,hi) minus D_g
};

// Lebesgue-Stieltjes integral of f over [lo, hi): jump atoms contribute
// f(t) dg(t), the continuous part integrates f(x) g'(x) dx per smooth span
// (closed forms where both pieces are elementary, adaptive Gauss-Kronrod
// otherwise).
double integrate(const PiecewiseMap& f, const Derivator& g, const GInterval& interval,
                 const IntegrateOptions& opts = {});

inline double integrate_minus_jumps(const PiecewiseMap& f, const Derivator& g,
                                    const GInterval& interval, double tol = 1e-10) {
    IntegrateOptions o;
    o.tol = tol;
    o.skip_jumps = true;
    return integrate(f, g, interval, o);
}

// Indefinite integral H(x) = integral of f over [a, x): left-continuous,
// H(a) = 0, jump f(t) dg(t) at every t in D_g. Exact at breakpoints, closed
// segment forms where available.
PiecewiseMap indefinite(const PiecewiseMap& f, const Derivator& g, double quad_tol = 1e-10);

struct FtcReport {
    bool ok = false;
    double max_err = 0.0;
    double worst_x = 0.0;
};

// Checks F(x) = F(a) + integral of F'_g over [a, x) across the grid, with
// F'_g reconstructed by g_derivative_fn. Fails (ok = false) exactly when F
// is outside the fundamental-theorem class, e.g. a nonconstant function
// with everywhere-zero derivative.
FtcReport ftc_roundtrip_check(const PiecewiseMap& F, const Derivator& g,
                              double tol = 1e-7, int grid_n = 256,
                              double deriv_tol = 1e-9);

// Adaptive Gauss-Kronrod 7/15 on a smooth integrand.
double adaptive_gk(const std::function<double(double)>& fn, double lo, double hi,
                   double tol, int max_depth = 28);

// Continuous-part integral of one integrand piece against one derivator
// piece over (u, v); both spans must be breakpoint-free.
double span_mu_integral(const SegmentForm& fs, const SegmentForm& gs, double u, double v,
                        double tol);

}  // namespace stieltjes
