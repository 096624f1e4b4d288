#pragma once

#include <random>

#include "stieltjes/piecewise.hpp"

namespace stieltjes {

// Deterministic fuzz inputs shared by the property suite and the acceptance
// tests. Everything is seeded; no wall-clock entropy.
struct GeneratorOptions {
    int max_breakpoints = 7;
    bool allow_plateaus = true;
    bool allow_jumps = true;
};

using Rng = std::mt19937_64;

// Random derivator honoring the standing endpoint hypotheses: strictly
// increasing first and last segments, jumps only at interior breakpoints.
Derivator random_derivator(Rng& rng, const GeneratorOptions& opts = {});

// Random piecewise-smooth candidate on g's domain: affine / exp / constant
// segments, optional value jumps at the derivator's jump points (explicit
// point values and right limits). Differentiable at g's jumps and on open
// segments; may fail differentiability at its own kinks.
PiecewiseMap random_smooth_map(Rng& rng, const Derivator& g);

// A pair (f, h) with |f'_g| <= h'_g everywhere by construction: h is the
// indefinite integral of a positive step density, f of the same density
// damped pointwise into [-0.95, 0.95].
std::pair<PiecewiseMap, PiecewiseMap> random_dominated_pair(Rng& rng, const Derivator& g);

// A function in the derivative-everywhere class: indefinite integral of a
// random step density plus a random step over D_g (a kernel element).
PiecewiseMap random_bd1_map(Rng& rng, const Derivator& g);

// Random bounded step density (piecewise constant, jumps at random points).
PiecewiseMap random_step_density(Rng& rng, const Derivator& g, double lo, double hi);

}  // namespace stieltjes
