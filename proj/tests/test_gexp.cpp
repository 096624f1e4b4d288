#include <doctest.h>

#include "stieltjes/generators.hpp"
#include "stieltjes/gexp.hpp"

using namespace stieltjes;

namespace {

LinearProblem unit_problem(double T = 3.0) {
    Derivator g = example1_derivator(1.0, 1.0, T);
    return LinearProblem{g, PiecewiseMap::constant(0.0, T, 1.0), std::nullopt, 1.0};
}

}  // namespace

TEST_CASE("g-exponential on the worked jump example") {
    LinearProblem p = unit_problem();
    const double e1 = std::exp(1.0), e2 = std::exp(2.0);

    CHECK(g_exponential(p.beta, p.g, 1.0) == doctest::Approx(e1).epsilon(1e-14));
    CHECK(g_exponential(p.beta, p.g, 2.0) == doctest::Approx(2.0 * e2).epsilon(1e-14));

    PiecewiseMap v = solve_homogeneous_ac(p);
    CHECK(v.eval(1.0) == doctest::Approx(e1).epsilon(1e-15));
    CHECK(v.right_limit(1.0) == doctest::Approx(2.0 * e1).epsilon(1e-15));
    CHECK(v.eval(2.0) == doctest::Approx(2.0 * e2).epsilon(1e-14));
    CHECK(v.right_limit(2.0) == doctest::Approx(4.0 * e2).epsilon(1e-14));
    CHECK(v.eval(2.5) == doctest::Approx(4.0 * std::exp(2.5)).epsilon(1e-13));

    SUBCASE("scalar evaluator and map agree") {
        for (double t : uniform_grid(0.0, 3.0, 50))
            CHECK(g_exponential(p.beta, p.g, t) == doctest::Approx(v.eval(t)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate exponentials") {
    Derivator id = identity_derivator(0.0, 1.0);
    PiecewiseMap zero = PiecewiseMap::constant(0.0, 1.0, 0.0);
    for (double t : uniform_grid(0.0, 1.0, 17))
        CHECK(g_exponential(zero, id, t) == 1.0);

    SUBCASE("classical exponential without jumps") {
        PiecewiseMap c = PiecewiseMap::constant(0.0, 1.0, 1.7);
        for (double t : uniform_grid(0.0, 1.0, 17))
            CHECK(g_exponential(c, id, t) == doctest::Approx(std::exp(1.7 * t)).epsilon(1e-13));
    }
    SUBCASE("zero initial value gives the zero map") {
        LinearProblem p = unit_problem();
        p.v0 = 0.0;
        PiecewiseMap v = solve_homogeneous_ac(p);
        for (double t : uniform_grid(0.0, 3.0, 17)) CHECK(v.eval(t) == 0.0);
    }
    SUBCASE("zero coefficient keeps the initial value") {
        Derivator g = example1_derivator(1.0, 1.0);
        LinearProblem p{g, PiecewiseMap::constant(0.0, 3.0, 0.0), std::nullopt, 3.5};
        PiecewiseMap v = solve_homogeneous_ac(p);
        for (double t : uniform_grid(0.0, 3.0, 17)) CHECK(v.eval(t) == 3.5);
    }
}

TEST_CASE("exponential invariants") {
    Rng rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        Derivator g = random_derivator(rng);
        std::uniform_real_distribution<double> cdist(-0.4, 1.2);
        PiecewiseMap beta =
            PiecewiseMap::constant(g.domain_lo(), g.domain_hi(), cdist(rng));
        bool regressive = true;
        for (const auto& [t, dg] : g.jumps())
            if (std::fabs(1.0 + beta.eval(t) * dg) < 1e-12) regressive = false;
        if (!regressive) continue;
        PiecewiseMap v = g_exponential_map(beta, g);
        for (double t : uniform_grid(g.domain_lo(), g.domain_hi(), 33))
            CHECK(v.eval(t) != 0.0);
        for (const auto& [t, dg] : g.jumps())
            CHECK(v.right_limit(t) == (1.0 + beta.eval(t) * dg) * v.eval(t));
    }
}

TEST_CASE("nonunique solutions through kernel multipliers") {
    LinearProblem p = unit_problem();
    const double e1 = std::exp(1.0), e2 = std::exp(2.0);
    KernelElement h = example1_h(1.0, p.g);
    PiecewiseMap vt = nonunique_solutions(p, h);

    CHECK(vt.eval(0.0) == 1.0);
    CHECK(vt.eval(1.0) == doctest::Approx(0.5 * e1).epsilon(1e-15));
    CHECK(vt.right_limit(1.0) == doctest::Approx(e1).epsilon(1e-15));
    // the displayed-formula value, not the figure's inconsistent plot point
    CHECK(vt.eval(2.0) == doctest::Approx(0.5 * e2).epsilon(1e-14));
    CHECK(vt.right_limit(2.0) == doctest::Approx(e2).epsilon(1e-14));
    CHECK(vt.eval(2.5) == doctest::Approx(std::exp(2.5)).epsilon(1e-13));

    SUBCASE("the residual vanishes off the constancy set") {
        CHECK(residual_check(vt, p, 256) <= 1e-8);
    }
    SUBCASE("a trivial multiplier returns the absolutely continuous solution") {
        KernelElement one = step_kernel(p.g, {1.0, 1.0, 1.0});
        PiecewiseMap v = solve_homogeneous_ac(p);
        PiecewiseMap same = nonunique_solutions(p, one);
        for (double t : uniform_grid(0.0, 3.0, 33))
            CHECK(same.eval(t) == doctest::Approx(v.eval(t)).epsilon(1e-14));
    }
    SUBCASE("initial-value and kernel validation") {
        KernelElement bad_init = step_kernel(p.g, {2.0, 1.0, 1.0});
        CHECK_THROWS_AS(nonunique_solutions(p, bad_init), StieltjesError);
        KernelElement not_kernel{as_piecewise(p.g), KernelConstruction::UserSupplied};
        CHECK_THROWS_AS(nonunique_solutions(p, not_kernel), StieltjesError);
    }
    SUBCASE("distinct multipliers differ at a jump") {
        KernelElement h2 = step_kernel(p.g, {1.0, 0.25, 0.125});
        PiecewiseMap vt2 = nonunique_solutions(p, h2);
        CHECK(vt.eval(1.0) != vt2.eval(1.0));
    }
}

TEST_CASE("residual check distinguishes solutions from non-solutions") {
    LinearProblem p = unit_problem();
    PiecewiseMap v = solve_homogeneous_ac(p);
    CHECK(residual_check(v, p, 256) <= 1e-8);

    SUBCASE("a constant is not a solution of the unit-coefficient problem") {
        PiecewiseMap c = PiecewiseMap::constant(0.0, 3.0, 1.0);
        CHECK(residual_check(c, p, 64) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("the derivator solves v' = 1 with zero coefficient") {
        Derivator g = example1_derivator(1.0, 1.0);
        LinearProblem forced{g, PiecewiseMap::constant(0.0, 3.0, 0.0),
                             PiecewiseMap::constant(0.0, 3.0, 1.0), 0.0};
        CHECK(residual_check(as_piecewise(g), forced, 128) <= 1e-9);
    }
}

TEST_CASE("forced problems") {
    SUBCASE("zero forcing reduces to the homogeneous solution") {
        LinearProblem p = unit_problem();
        LinearProblem forced = p;
        forced.forcing = PiecewiseMap::constant(0.0, 3.0, 0.0);
        PiecewiseMap v = solve_forced(forced);
        PiecewiseMap vh = solve_homogeneous_ac(p);
        for (double t : uniform_grid(0.0, 3.0, 33))
            CHECK(v.eval(t) == doctest::Approx(vh.eval(t)).epsilon(1e-10));
    }
    SUBCASE("classical constant forcing on the identity") {
        Derivator id = identity_derivator(0.0, 1.0);
        LinearProblem p{id, PiecewiseMap::constant(0.0, 1.0, 0.0),
                        PiecewiseMap::constant(0.0, 1.0, 1.0), 2.0};
        PiecewiseMap v = solve_forced(p);
        for (double t : uniform_grid(0.0, 1.0, 17))
            CHECK(v.eval(t) == doctest::Approx(2.0 + t).epsilon(1e-10));
    }
    SUBCASE("forced jump problem validates its own candidate") {
        LinearProblem p = unit_problem();
        p.forcing = PiecewiseMap::constant(0.0, 3.0, 1.0);
        PiecewiseMap v = solve_forced(p, 1e-8);
        CHECK(residual_check(v, p, 256) <= 1e-8);
        // jump relation v(t+) = (1 + dg) v(t) + f(t) dg at both jumps
        for (double t : {1.0, 2.0})
            CHECK(v.right_limit(t) ==
                  doctest::Approx(2.0 * v.eval(t) + 1.0).epsilon(1e-12));
    }
}

TEST_CASE("cross-module: decomposing the nonunique solution") {
    LinearProblem p = unit_problem();
    KernelElement h = example1_h(1.0, p.g);
    PiecewiseMap v = solve_homogeneous_ac(p);
    PiecewiseMap vt = nonunique_solutions(p, h);

    SUBCASE("multiplicative split recovers the pair (h, v)") {
        MultiplicativeDecomposition dec = multiplicative_decompose(vt, p.g);
        for (double t : uniform_grid(0.0, 3.0, 65)) {
            CHECK(dec.ac_solution.eval(t) == doctest::Approx(v.eval(t)).epsilon(1e-8));
            CHECK(dec.kernel_part.eval(t) == doctest::Approx(h.map.eval(t)).epsilon(1e-8));
            CHECK(dec.kernel_part.eval(t) * dec.ac_solution.eval(t) ==
                  doctest::Approx(vt.eval(t)).epsilon(1e-8));
        }
    }
    SUBCASE("additive split yields a kernel residue vanishing at zero") {
        AdditiveDecomposition dec = additive_decompose(vt, p.g);
        CHECK(dec.kernel_part.eval(0.0) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(is_kernel_member(dec.kernel_part, p.g, 256, 1e-8));
        for (double t : uniform_grid(0.0, 3.0, 65))
            CHECK(dec.ac_part.eval(t) + dec.kernel_part.eval(t) ==
                  doctest::Approx(vt.eval(t)).epsilon(1e-9));
        // closed form of the residue: 0, -e/2, -(e + e^2)/2 on the
        // right-closed jump components
        const double e1 = std::exp(1.0), e2 = std::exp(2.0);
        CHECK(dec.kernel_part.eval(0.5) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(dec.kernel_part.eval(1.5) == doctest::Approx(-0.5 * e1).epsilon(1e-10));
        CHECK(dec.kernel_part.eval(2.5) ==
              doctest::Approx(-0.5 * (e1 + e2)).epsilon(1e-10));
    }
}
