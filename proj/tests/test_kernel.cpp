#include <doctest.h>

#include "stieltjes/cantor.hpp"
#include "stieltjes/generators.hpp"
#include "stieltjes/gexp.hpp"
#include "stieltjes/kernel.hpp"

using namespace stieltjes;

TEST_CASE("step kernel elements over the jump set") {
    Derivator ex1 = example1_derivator(1.0, 1.0);

    SUBCASE("values land on the right-closed components") {
        KernelElement k = step_kernel(ex1, {1.0, 0.5, 0.25});
        CHECK(k.map.eval(0.0) == 1.0);
        CHECK(k.map.eval(0.999) == 1.0);
        CHECK(k.map.eval(1.0) == 0.5);  // right continuity at the jump
        CHECK(k.map.eval(1.5) == 0.5);
        CHECK(k.map.eval(2.0) == 0.25);
        CHECK(k.map.eval(3.0) == 0.25);
        CHECK(k.map.right_limit(1.0) == 0.5);
        CHECK(is_kernel_member(k.map, ex1, 256, 1e-9));
    }
    SUBCASE("all-equal values collapse to a constant") {
        KernelElement k = step_kernel(ex1, {0.7, 0.7, 0.7});
        for (double t : uniform_grid(0.0, 3.0, 64)) CHECK(k.map.eval(t) == 0.7);
    }
    SUBCASE("single component: only constants") {
        Derivator id = identity_derivator(0.0, 1.0);
        KernelElement k = step_kernel(id, {2.0});
        CHECK(k.map.eval(0.5) == 2.0);
        CHECK_THROWS_AS(step_kernel(id, {1.0, 2.0}), StieltjesError);
    }
    SUBCASE("closure condition is hard-required") {
        Derivator witness = ae_witness_derivator(8);
        CHECK_FALSE(witness.closure_conditions().dg_accum_ok);
        std::vector<double> values(witness.jumps().size() + 1, 1.0);
        CHECK_THROWS_AS(step_kernel(witness, values), StieltjesError);
    }
}

TEST_CASE("reciprocal jump-product element") {
    Derivator ex1 = example1_derivator(1.0, 1.0);

    SUBCASE("published values for unit jumps and unit coefficient") {
        KernelElement h = example1_h(1.0, ex1);
        CHECK(h.map.eval(0.0) == 1.0);
        CHECK(h.map.eval(0.5) == 1.0);
        CHECK(h.map.eval(1.0) == 0.5);
        CHECK(h.map.eval(1.5) == 0.5);
        CHECK(h.map.eval(2.0) == 0.25);
        CHECK(h.map.eval(2.5) == 0.25);
        CHECK(is_kernel_member(h.map, ex1, 256, 1e-9));
    }
    SUBCASE("no jumps or zero coefficient give the constant one") {
        Derivator id = identity_derivator(0.0, 1.0);
        CHECK(example1_h(1.0, id).map.eval(0.7) == 1.0);
        KernelElement h0 = example1_h(0.0, ex1);
        for (double t : uniform_grid(0.0, 3.0, 31)) CHECK(h0.map.eval(t) == 1.0);
    }
    SUBCASE("regressivity is enforced") {
        CHECK_THROWS_AS(example1_h(-1.0, ex1), StieltjesError);  // 1 + (-1)(1) = 0
    }
}

TEST_CASE("kernel membership verdicts") {
    Derivator ex1 = example1_derivator(1.0, 1.0);
    CHECK(is_kernel_member(PiecewiseMap::constant(0.0, 3.0, 3.3), ex1, 128, 1e-9));
    CHECK_FALSE(is_kernel_member(as_piecewise(ex1), ex1, 128, 1e-9));  // derivative is 1

    SUBCASE("cantor iterates vanish against the staircase") {
        Derivator g = cantor_derivator(8);
        PiecewiseMap f3 = cantor_iterate_fn(3);
        CHECK(is_kernel_member(f3, g, triadic_grid(5), 1e-9));
        CHECK_FALSE(is_kernel_member(as_piecewise(g), g, triadic_grid(4), 1e-9));
    }
    SUBCASE("products of kernel elements stay in the kernel") {
        KernelElement k1 = step_kernel(ex1, {1.0, 2.0, 4.0});
        KernelElement k2 = example1_h(1.0, ex1);
        CHECK(is_kernel_member(multiply(k1.map, k2.map), ex1, 128, 1e-9));
    }
    SUBCASE("user candidates are validated") {
        PiecewiseMap bad = PiecewiseMap::build({0.0, 1.0, 3.0},
                                               {ConstantForm{0.0}, ConstantForm{1.0}},
                                               {{1.0, 0.0}});  // not right-continuous at 1
        CHECK_THROWS_AS(user_kernel(bad, ex1), StieltjesError);
    }
}

TEST_CASE("additive decomposition") {
    Derivator ex1 = example1_derivator(1.0, 1.0);

    SUBCASE("functions in the fundamental-theorem class have zero residue") {
        PiecewiseMap v = solve_homogeneous_ac(
            LinearProblem{ex1, PiecewiseMap::constant(0.0, 3.0, 1.0), std::nullopt, 1.0});
        AdditiveDecomposition dec = additive_decompose(v, ex1);
        for (double t : uniform_grid(0.0, 3.0, 65))
            CHECK(dec.kernel_part.eval(t) == doctest::Approx(0.0).epsilon(1e-8));
    }
    SUBCASE("constants decompose trivially") {
        PiecewiseMap c = PiecewiseMap::constant(0.0, 3.0, 5.0);
        AdditiveDecomposition dec = additive_decompose(c, ex1);
        for (double t : uniform_grid(0.0, 3.0, 33)) {
            CHECK(dec.ac_part.eval(t) == doctest::Approx(5.0).epsilon(1e-12));
            CHECK(dec.kernel_part.eval(t) == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    SUBCASE("reconstruction is exact and the residue is normalized at a") {
        Rng rng(71);
        for (int trial = 0; trial < 6; ++trial) {
            Derivator g = random_derivator(rng);
            PiecewiseMap f = random_bd1_map(rng, g);
            AdditiveDecomposition dec = additive_decompose(f, g);
            CHECK(dec.kernel_part.eval(g.domain_lo()) == doctest::Approx(0.0).epsilon(1e-10));
            auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), 64);
            for (double t : pts)
                CHECK(dec.ac_part.eval(t) + dec.kernel_part.eval(t) ==
                      doctest::Approx(f.eval(t)).epsilon(1e-9));
            for (const auto& [t, dgj] : g.jumps()) {
                CHECK(dec.ac_part.right_limit(t) + dec.kernel_part.right_limit(t) ==
                      doctest::Approx(f.right_limit(t)).epsilon(1e-9));
            }
            CHECK(is_kernel_member(dec.kernel_part, g, 64, 1e-7));
        }
    }
}

TEST_CASE("multiplicative decomposition") {
    Derivator ex1 = example1_derivator(1.0, 1.0);
    PiecewiseMap beta = PiecewiseMap::constant(0.0, 3.0, 1.0);
    LinearProblem problem{ex1, beta, std::nullopt, 1.0};
    PiecewiseMap v = solve_homogeneous_ac(problem);

    SUBCASE("the exponential splits into itself times one") {
        MultiplicativeDecomposition dec = multiplicative_decompose(v, ex1);
        for (double t : uniform_grid(0.0, 3.0, 49)) {
            CHECK(dec.ac_solution.eval(t) == doctest::Approx(v.eval(t)).epsilon(1e-8));
            CHECK(dec.kernel_part.eval(t) == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
    SUBCASE("constants split into the constant times one") {
        PiecewiseMap c = PiecewiseMap::constant(0.0, 3.0, 4.0);
        MultiplicativeDecomposition dec = multiplicative_decompose(c, ex1);
        for (double t : uniform_grid(0.0, 3.0, 49)) {
            CHECK(dec.ac_solution.eval(t) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(dec.kernel_part.eval(t) == doctest::Approx(4.0).epsilon(1e-9));
        }
    }
    SUBCASE("zero values at jumps are rejected") {
        PiecewiseMap zero_at_jump = PiecewiseMap::build(
            {0.0, 1.0, 3.0}, {AffineForm{-1.0, 1.0}, AffineForm{1.0, -1.0}}, {{1.0, 0.0}});
        CHECK_THROWS_AS(multiplicative_decompose(zero_at_jump, ex1), StieltjesError);
    }
}

TEST_CASE("a.e.-zero forcing") {
    Derivator ex1 = example1_derivator(1.0, 1.0);
    SUBCASE("the zero map passes") {
        AeZeroReport rep = ae_zero_forces_zero_check(PiecewiseMap::constant(0.0, 3.0, 0.0), ex1);
        CHECK(rep.applicable);
        CHECK(rep.held);
    }
    SUBCASE("an out-of-space candidate is reported as not applicable") {
        CustomForm wild;
        wild.fn = [](double x) {
            double scaled = x * 262144.0;
            return (scaled - std::floor(scaled) < 0.5) ? 1.0 : 0.0;
        };
        PiecewiseMap ind = PiecewiseMap::build({0.0, 3.0}, {SegmentForm{wild}}, {{0.0, 0.0}});
        AeZeroReport rep = ae_zero_forces_zero_check(ind, ex1);
        CHECK_FALSE(rep.applicable);
        CHECK(rep.note == "NotInBD");
        CHECK(rep.held);
    }
}

TEST_CASE("truncated accumulation witness") {
    const int depth = 20;
    Derivator g = ae_witness_derivator(depth);
    PiecewiseMap f = ae_witness_map(depth);

    SUBCASE("declared limit answers the closure question") {
        CHECK(g.closure_conditions().ng_accum_ok);
        CHECK_FALSE(g.closure_conditions().dg_accum_ok);
        CHECK(g.tail_bound() == doctest::Approx(std::pow(2.0, 1 - depth)));
    }
    SUBCASE("derivative vanishes at every jump and step piece") {
        for (const auto& [t, dg] : g.jumps())
            CHECK(g_derivative_value(f, g, t) == 0.0);
        for (double t : {-0.8, -0.41, 0.26, 0.41, 0.7})
            CHECK(g_derivative_value(f, g, t) == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("derivative at zero equals one: negative control for the kernel") {
        CHECK(g_derivative_value(f, g, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_FALSE(is_kernel_member(f, g, 128, 1e-9));
    }
    SUBCASE("envelope bounds pin the quotient at zero analytically") {
        // t/(1+t) <= f(t) <= t on the positive side, so the quotient against
        // g(t) = t + tail is squeezed to one.
        for (int m = 3; m <= depth; ++m) {
            double t = 1.0 / m;
            double ft = f.eval(t);
            CHECK(ft <= t + 1e-15);
            CHECK(ft >= t / (1.0 + t) - 1e-15);
            double q = (ft - f.eval(0.0)) / (g.eval(t) - g.eval(0.0));
            CHECK(std::fabs(q - 1.0) <= 1.1 * t + std::pow(2.0, 1 - m));
        }
    }
}
