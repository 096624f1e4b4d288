#include <doctest.h>

#include "stieltjes/generators.hpp"
#include "stieltjes/kernel.hpp"
#include "stieltjes/measure.hpp"

using namespace stieltjes;

TEST_CASE("interval measure on the worked examples") {
    Derivator gder = gderexample_derivator();
    Derivator ex1 = example1_derivator(1.0, 1.0);

    CHECK(mu(gder, {0.0, 3.0}) == 2.0);        // g(3) - g(0)
    CHECK(mu(ex1, {0.0, 2.0}) == 3.0);         // (2 + d1) - 0
    CHECK(mu(ex1, {1.5, 1.5}) == 0.0);         // empty interval
    CHECK(ex1.delta(1.0) == 1.0);              // singleton mass
    CHECK_THROWS_AS(mu(ex1, {0.0, 9.0}), StieltjesError);

    SUBCASE("additivity is exact") {
        Rng rng(17);
        for (int trial = 0; trial < 25; ++trial) {
            Derivator g = random_derivator(rng);
            double a = g.domain_lo(), b = g.domain_hi();
            for (double cut : {0.25, 0.5, 0.777}) {
                double m = a + cut * (b - a);
                CHECK(mu(g, {a, m}) + mu(g, {m, b}) ==
                      doctest::Approx(mu(g, {a, b})).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("integration: atoms, plateaus, closed forms") {
    Derivator ex1 = example1_derivator(1.0, 1.0);
    PiecewiseMap one = PiecewiseMap::constant(0.0, 3.0, 1.0);

    CHECK(integrate(one, ex1, {0.0, 3.0}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(integrate(scale(0.0, one), ex1, {0.0, 3.0}) == 0.0);

    SUBCASE("classical case") {
        Derivator id = identity_derivator(0.0, 1.0);
        PiecewiseMap x = PiecewiseMap::build({0.0, 1.0}, {AffineForm{1.0, 0.0}});
        CHECK(integrate(x, id, {0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("jump-free mode subtracts exactly the atoms") {
        double with = integrate(one, ex1, {0.0, 3.0});
        double without = integrate_minus_jumps(one, ex1, {0.0, 3.0});
        CHECK(with - without == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("plateaus carry no continuous mass") {
        Derivator gder = gderexample_derivator();
        CHECK(integrate(one, gder, {0.0, 3.0}) == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("exp integrand against affine derivator is closed-form") {
        Derivator id = identity_derivator(0.0, 1.0);
        PiecewiseMap e = PiecewiseMap::build({0.0, 1.0}, {ExpForm{1.0, 1.0, 0.0}});
        CHECK(integrate(e, id, {0.0, 1.0}) ==
              doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    }
    SUBCASE("linearity in the integrand") {
        Rng rng(23);
        for (int trial = 0; trial < 20; ++trial) {
            Derivator g = random_derivator(rng);
            PiecewiseMap f1 = random_smooth_map(rng, g);
            PiecewiseMap f2 = random_smooth_map(rng, g);
            GInterval itv{g.domain_lo(), g.domain_hi()};
            double lhs = integrate(add(f1, scale(-3.0, f2)), g, itv);
            double rhs = integrate(f1, g, itv) - 3.0 * integrate(f2, g, itv);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("indefinite integral: left continuity, jump masses, endpoint") {
    Derivator ex1 = example1_derivator(1.0, 1.0);
    PiecewiseMap one = PiecewiseMap::constant(0.0, 3.0, 1.0);
    PiecewiseMap H = indefinite(one, ex1);

    CHECK(H.eval(0.0) == 0.0);
    // integral of 1 is g - g(a)
    for (double t : uniform_grid(0.0, 3.0, 31))
        CHECK(H.eval(t) == doctest::Approx(ex1.eval(t)).epsilon(1e-13));
    CHECK(H.right_limit(1.0) - H.eval(1.0) == doctest::Approx(1.0).epsilon(1e-14));

    SUBCASE("value at b equals the full integral exactly") {
        Rng rng(29);
        for (int trial = 0; trial < 10; ++trial) {
            Derivator g = random_derivator(rng);
            PiecewiseMap f = random_smooth_map(rng, g);
            PiecewiseMap Hf = indefinite(f, g);
            double full = integrate(f, g, {g.domain_lo(), g.domain_hi()});
            CHECK(Hf.eval(g.domain_hi()) == doctest::Approx(full).epsilon(1e-12));
        }
    }
    SUBCASE("derivative of the indefinite integral recovers the density") {
        // H'_g = h(x*) for densities in the membership class
        Rng rng(31);
        for (int trial = 0; trial < 8; ++trial) {
            Derivator g = random_derivator(rng);
            PiecewiseMap h = random_step_density(rng, g, -1.0, 2.0);
            PiecewiseMap H = indefinite(h, g);
            auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), 64);
            for (double t : pts) {
                double expect = star_eval(h, g, t);
                CHECK(g_derivative_value(H, g, t) == doctest::Approx(expect).epsilon(1e-6));
            }
            for (const auto& [t, dg] : g.jumps())
                CHECK(g_derivative_value(H, g, t) == doctest::Approx(h.eval(t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("fundamental-theorem roundtrip") {
    SUBCASE("the exponential solution roundtrips") {
        Derivator ex1 = example1_derivator(1.0, 1.0);
        PiecewiseMap one = PiecewiseMap::constant(0.0, 3.0, 1.0);
        PiecewiseMap H = indefinite(one, ex1);  // = g - g(a), in the class
        FtcReport rep = ftc_roundtrip_check(H, ex1, 1e-8);
        CHECK(rep.ok);
    }
    SUBCASE("constants roundtrip") {
        Derivator gder = gderexample_derivator();
        PiecewiseMap c = PiecewiseMap::constant(0.0, 3.0, 2.0);
        CHECK(ftc_roundtrip_check(c, gder, 1e-10).ok);
    }
}

TEST_CASE("unbounded integrands are rejected") {
    Derivator id = identity_derivator(0.0, 1.0);
    CustomForm blow;
    blow.fn = [](double x) { return 1.0 / (x - 0.5); };
    PiecewiseMap f = PiecewiseMap::build({0.0, 1.0}, {SegmentForm{blow}}, {{0.0, -2.0}});
    CHECK_THROWS_AS(integrate(f, id, {0.0, 1.0}), StieltjesError);
}
