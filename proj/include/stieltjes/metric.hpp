#pragma once

#include "stieltjes/gdiff.hpp"

namespace stieltjes {

// Chordal distance |x-y| / (sqrt(1+x^2) sqrt(1+y^2)); the one-point
// compactification puts all infinities at the pole, so l(inf, inf) = 0 and
// l(inf, y) = 1/sqrt(1+y^2).
double chordal(double x, double y);

struct GammaOptions {
    int uniform_n = 256;
    // Anchored two-sided offsets 2^-k around every breakpoint; k runs over
    // this list. The default reaches 2^-30, deep enough to expose divergent
    // quotients next to plateau/jump interactions.
    std::vector<int> offset_exponents = {1,  2,  3,  4,  5,  6,  8,  10,
                                         12, 14, 16, 20, 24, 28, 30};
    std::vector<double> extra_points;  // shared anchors for triple checks
};

// Lower bound of the difference-quotient sup: chordal distance between the
// quotients of f and h over a pair grid of breakpoints, a uniform grid,
// one-sided jump quotients, and geometric near-diagonal pairs. Pairs with
// equal g-values are excluded exactly.
double gamma(const PiecewiseMap& f, const PiecewiseMap& h, const Derivator& g,
             const GammaOptions& opts = {});

struct MetricReport {
    double sup_norm_gap = 0.0;
    double deriv_gap = 0.0;
    double gamma = 0.0;
    double d = 0.0;
};

struct MetricGrids {
    int sup_n = Defaults::grid_n;
    int deriv_n = 256;
    double deriv_tol = 1e-9;
    GammaOptions gamma_opts;
};

MetricReport bd1_distance(const PiecewiseMap& f, const PiecewiseMap& h, const Derivator& g,
                          const MetricGrids& grids = {});

// Symmetry (exact), triangle inequality (within slack) and identity of
// indiscernibles for the computed distance on one triple. The gamma pair
// grid is shared across the three pairings so the computed values inherit
// the pointwise triangle inequality.
bool metric_axioms_check(const PiecewiseMap& f1, const PiecewiseMap& f2,
                         const PiecewiseMap& f3, const Derivator& g,
                         const MetricGrids& grids = {}, double slack = 1e-12);

struct CauchyProbe {
    std::vector<std::vector<MetricReport>> pairwise;  // upper triangle
    std::vector<double> eps_schedule;
    std::vector<bool> eps_cauchy;  // some tail is pairwise within eps
};

CauchyProbe cauchy_probe(const std::vector<PiecewiseMap>& fns, const Derivator& g,
                         const std::vector<double>& eps_schedule,
                         const MetricGrids& grids = {});

}  // namespace stieltjes
