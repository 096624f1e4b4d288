#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stieltjes/cantor.hpp"
#include "stieltjes/generators.hpp"
#include "stieltjes/gexp.hpp"
#include "stieltjes/intervals.hpp"
#include "stieltjes/io.hpp"
#include "stieltjes/kernel.hpp"
#include "stieltjes/measure.hpp"
#include "stieltjes/metric.hpp"

using namespace stieltjes;
using nlohmann::json;

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16g", x);
    return buf;
}

double env_tol() {
    if (const char* s = std::getenv("STIELTJES_TOL")) return std::atof(s);
    return Defaults::tol;
}

int env_grid() {
    if (const char* s = std::getenv("STIELTJES_GRID")) return std::atoi(s);
    return Defaults::grid_n;
}

// "--beta 1.5" means a constant coefficient; anything else is a JSON path.
PiecewiseMap map_or_constant(const std::string& spec, const Derivator& g) {
    char* end = nullptr;
    double v = std::strtod(spec.c_str(), &end);
    if (end && *end == '\0' && end != spec.c_str())
        return PiecewiseMap::constant(g.domain_lo(), g.domain_hi(), v);
    return load_piecewise(spec);
}

void emit_curve_csv(const PiecewiseMap& v, const Derivator& g, int grid_n) {
    auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);
    pts.insert(pts.end(), v.breakpoints().begin(), v.breakpoints().end());
    pts = merge_points(std::move(pts));
    std::printf("t,value,right_limit\n");
    for (double t : pts) {
        double val = v.eval(t);
        std::printf("%s,%s", num(t).c_str(), num(val).c_str());
        if (t < v.domain_hi()) {
            double r = v.right_limit(t);
            if (r != val) std::printf(",%s", num(r).c_str());
        }
        std::printf("\n");
    }
}

json classification_json(const Derivator& g, double t) {
    PointClassification pc = g.classify(t);
    json j;
    j["t"] = t;
    j["class"] = point_class_name(pc.cls);
    j["t_star"] = pc.t_star;
    j["delta_g"] = pc.delta_g;
    return j;
}

json deriv_json(double t, const GDerivReport& rep) {
    json j;
    j["t"] = t;
    switch (rep.mode) {
        case DerivMode::TwoSided: j["mode"] = "TwoSided"; break;
        case DerivMode::RightAtJump: j["mode"] = "RightAtJump"; break;
        case DerivMode::RightAtBn: j["mode"] = "RightAtBn"; break;
    }
    if (rep.ok()) {
        j["value"] = *rep.value;
    } else {
        switch (rep.failure->kind) {
            case DerivFailure::Kind::LeftRightMismatch:
                j["failure"] = "LeftRightMismatch";
                j["left"] = rep.failure->left;
                j["right"] = rep.failure->right;
                break;
            case DerivFailure::Kind::Diverges: j["failure"] = "Diverges"; break;
            case DerivFailure::Kind::Undefined: j["failure"] = "Undefined"; break;
        }
    }
    return j;
}

int run_suite(unsigned seed);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical Stieltjes calculus: derivators, g-derivatives, "
                 "Lebesgue-Stieltjes integrals, g-exponentials and the metric on "
                 "bounded differentiable functions"};
    app.require_subcommand(1);

    std::string g_path, f_path, h_path, beta_spec, forcing_spec, mode, family, figure, emit;
    double at = 0.0, from = 0.0, to = 0.0, v0 = 1.0;
    double tol = env_tol();
    int grid_n = env_grid();
    int depth = 3;
    unsigned seed = 20240101;
    bool skip_jumps = false;
    std::vector<double> step_values;

    auto* cls = app.add_subcommand("classify", "classify a point against D_g, C_g, N_g");
    cls->add_option("--g", g_path)->required();
    cls->add_option("--at", at)->required();

    auto* drv = app.add_subcommand("deriv", "Stieltjes derivative reports as JSON lines");
    drv->add_option("--f", f_path)->required();
    drv->add_option("--g", g_path)->required();
    auto* drv_at = drv->add_option("--at", at);
    drv->add_option("--grid", grid_n);
    drv->add_option("--tol", tol);

    auto* itg = app.add_subcommand("integrate", "Lebesgue-Stieltjes integral over [from,to)");
    itg->add_option("--f", f_path)->required();
    itg->add_option("--g", g_path)->required();
    itg->add_option("--from", from)->required();
    itg->add_option("--to", to)->required();
    itg->add_option("--tol", tol);
    itg->add_flag("--skip-jumps", skip_jumps);

    auto* exg = app.add_subcommand("expg", "g-exponential at a point");
    exg->add_option("--beta", beta_spec)->required();
    exg->add_option("--g", g_path);
    exg->add_option("--at", at)->required();

    auto* slv = app.add_subcommand("solve", "first-order linear Stieltjes problem");
    slv->add_option("--g", g_path)->required();
    slv->add_option("--beta", beta_spec)->required();
    slv->add_option("--forcing", forcing_spec);
    slv->add_option("--v0", v0);
    slv->add_option("--grid", grid_n);
    slv->add_option("--emit", emit)->default_str("csv");

    auto* krn = app.add_subcommand("kernel", "kernel elements and decompositions");
    krn->add_option("--g", g_path)->required();
    auto* krn_step = krn->add_subcommand("step", "step kernel element over D_g components");
    krn_step->add_option("--values", step_values)->required()->delimiter(',');
    auto* krn_ex1 = krn->add_subcommand("example1", "reciprocal jump-product element");
    krn_ex1->add_option("--beta", beta_spec)->required();
    auto* krn_ver = krn->add_subcommand("verify", "zero-derivative verification");
    krn_ver->add_option("--f", f_path)->required();
    auto* krn_dec = krn->add_subcommand("decompose", "additive or multiplicative split");
    krn_dec->add_option("--f", f_path)->required();
    krn_dec->add_option("--mode", mode)->required()->check(CLI::IsMember({"add", "mul"}));
    krn->require_subcommand(1);

    auto* gam = app.add_subcommand("gamma", "difference-quotient chordal sup");
    gam->add_option("--f", f_path)->required();
    gam->add_option("--h", h_path)->required();
    gam->add_option("--g", g_path)->required();
    gam->add_option("--grid", grid_n);

    auto* met = app.add_subcommand("metric", "distance report on the candidate space");
    met->add_option("--f", f_path)->required();
    met->add_option("--h", h_path)->required();
    met->add_option("--g", g_path)->required();

    auto* mvt = app.add_subcommand("mvt", "mean-value dominance over a family");
    mvt->add_option("--f", f_path)->required();
    mvt->add_option("--h", h_path)->required();
    mvt->add_option("--g", g_path)->required();
    mvt->add_option("--family", family)->required()->check(CLI::IsMember({"i1", "i2", "whole"}));
    mvt->add_option("--grid", grid_n);
    mvt->add_option("--tol", tol);

    auto* can = app.add_subcommand("cantor", "staircase iterate as CSV");
    can->add_option("--depth", depth)->required();
    can->add_option("--emit", emit)->default_str("csv");

    auto* rep = app.add_subcommand("reproduce", "reference curves from the worked example");
    rep->add_option("--figure", figure)->required()->check(CLI::IsMember({"v", "vtilde", "f3"}));

    auto* sui = app.add_subcommand("suite", "run the property suite");
    sui->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cls) {
            Derivator g = load_derivator(g_path);
            std::printf("%s\n", classification_json(g, at).dump().c_str());
        } else if (*drv) {
            Derivator g = load_derivator(g_path);
            PiecewiseMap f = load_piecewise(f_path);
            if (*drv_at) {
                std::printf("%s\n", deriv_json(at, g_derivative(f, g, at, tol)).dump().c_str());
            } else {
                auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);
                pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
                pts = merge_points(std::move(pts));
                for (const auto& [t, r] : derivative_grid(f, g, pts, tol))
                    std::printf("%s\n", deriv_json(t, r).dump().c_str());
            }
        } else if (*itg) {
            Derivator g = load_derivator(g_path);
            PiecewiseMap f = load_piecewise(f_path);
            IntegrateOptions opts;
            opts.tol = std::min(tol, 1e-10);
            opts.skip_jumps = skip_jumps;
            double value = integrate(f, g, {from, to}, opts);
            json j;
            j["value"] = value;
            j["abs_error_estimate"] = opts.tol;
            std::printf("%s\n", j.dump().c_str());
        } else if (*exg) {
            Derivator g = g_path.empty() ? identity_derivator(0.0, std::max(1.0, at))
                                         : load_derivator(g_path);
            PiecewiseMap beta = map_or_constant(beta_spec, g);
            std::printf("%s\n", num(g_exponential(beta, g, at)).c_str());
        } else if (*slv) {
            Derivator g = load_derivator(g_path);
            LinearProblem problem{g, map_or_constant(beta_spec, g), std::nullopt, v0};
            if (!forcing_spec.empty()) problem.forcing = map_or_constant(forcing_spec, g);
            PiecewiseMap v = problem.forcing ? solve_forced(problem, tol, grid_n)
                                             : solve_homogeneous_ac(problem);
            if (emit == "json") {
                std::printf("%s\n", piecewise_to_json(v).c_str());
            } else {
                emit_curve_csv(v, g, grid_n);
            }
        } else if (*krn) {
            Derivator g = load_derivator(g_path);
            if (*krn_step) {
                KernelElement k = step_kernel(g, step_values);
                std::printf("%s\n", piecewise_to_json(k.map).c_str());
            } else if (*krn_ex1) {
                KernelElement k = example1_h(map_or_constant(beta_spec, g), g);
                std::printf("%s\n", piecewise_to_json(k.map).c_str());
            } else if (*krn_ver) {
                PiecewiseMap f = load_piecewise(f_path);
                bool ok = is_kernel_member(f, g, 256, 1e-9);
                json j;
                j["kernel_member"] = ok;
                std::printf("%s\n", j.dump().c_str());
                return ok ? 0 : 1;
            } else if (*krn_dec) {
                PiecewiseMap f = load_piecewise(f_path);
                json j;
                if (mode == "add") {
                    AdditiveDecomposition dec = additive_decompose(f, g, tol);
                    j["ac_part"] = json::parse(piecewise_to_json(dec.ac_part));
                    j["kernel_part"] = json::parse(piecewise_to_json(dec.kernel_part));
                } else {
                    MultiplicativeDecomposition dec = multiplicative_decompose(f, g, tol);
                    j["kernel_part"] = json::parse(piecewise_to_json(dec.kernel_part));
                    j["ac_solution"] = json::parse(piecewise_to_json(dec.ac_solution));
                }
                std::printf("%s\n", j.dump(2).c_str());
            }
        } else if (*gam) {
            Derivator g = load_derivator(g_path);
            PiecewiseMap f = load_piecewise(f_path);
            PiecewiseMap h = load_piecewise(h_path);
            GammaOptions opts;
            opts.uniform_n = grid_n == Defaults::grid_n ? 256 : grid_n;
            std::printf("%s\n", num(gamma(f, h, g, opts)).c_str());
        } else if (*met) {
            Derivator g = load_derivator(g_path);
            PiecewiseMap f = load_piecewise(f_path);
            PiecewiseMap h = load_piecewise(h_path);
            MetricReport r = bd1_distance(f, h, g);
            json j;
            j["sup_norm_gap"] = r.sup_norm_gap;
            j["deriv_gap"] = r.deriv_gap;
            j["gamma"] = r.gamma;
            j["d"] = r.d;
            std::printf("%s\n", j.dump().c_str());
        } else if (*mvt) {
            Derivator g = load_derivator(g_path);
            PiecewiseMap f = load_piecewise(f_path);
            PiecewiseMap h = load_piecewise(h_path);
            MvtFamily fam = family == "i1" ? MvtFamily::I1
                            : family == "i2" ? MvtFamily::I2
                                             : MvtFamily::Whole;
            DominanceReport r = mvt_dominance_check(f, h, g, fam,
                                                    grid_n == Defaults::grid_n ? 256 : grid_n,
                                                    tol);
            json j;
            j["ok"] = r.ok;
            j["worst_excess"] = r.worst_excess;
            j["worst_pair"] = {r.worst_s, r.worst_t};
            std::printf("%s\n", j.dump().c_str());
            return r.ok ? 0 : 1;
        } else if (*can) {
            std::printf("x,F\n");
            for (double x : triadic_grid(std::min(depth + 2, 10)))
                std::printf("%s,%s\n", num(x).c_str(), num(cantor_g(x, depth)).c_str());
        } else if (*rep) {
            if (figure == "f3") {
                std::printf("x,F\n");
                for (double x : triadic_grid(5))
                    std::printf("%s,%s\n", num(x).c_str(), num(cantor_g(x, 3)).c_str());
            } else {
                Derivator g = example1_derivator(1.0, 1.0, 3.0);
                LinearProblem problem{g, PiecewiseMap::constant(0.0, 3.0, 1.0), std::nullopt, 1.0};
                PiecewiseMap v = solve_homogeneous_ac(problem);
                if (figure == "v") {
                    emit_curve_csv(v, g, 512);
                } else {
                    KernelElement h = example1_h(1.0, g);
                    emit_curve_csv(nonunique_solutions(problem, h), g, 512);
                }
            }
        } else if (*sui) {
            return run_suite(seed);
        }
    } catch (const StieltjesError& e) {
        json j;
        j["error"] = e.what();
        std::fprintf(stderr, "%s\n", j.dump().c_str());
        return 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = e.what();
        std::fprintf(stderr, "%s\n", j.dump().c_str());
        return 1;
    }
    return 0;
}

namespace {

int run_suite(unsigned seed) {
    int failures = 0;
    auto check = [&failures](const char* name, bool ok) {
        std::printf("%-58s %s\n", name, ok ? "ok" : "FAIL");
        if (!ok) ++failures;
    };

    Rng rng(seed);
    Derivator gder = gderexample_derivator();
    Derivator ex1 = example1_derivator(1.0, 1.0, 3.0);

    // Derivator structure on the worked examples.
    check("classify: plateau interior projects to its right end",
          gder.classify(1.5).cls == PointClass::ConstancyInterior &&
              gder.classify(1.5).t_star == 2.0);
    check("eval is monotone and left-continuous on samples", [&] {
        for (int trial = 0; trial < 10; ++trial) {
            Derivator g = random_derivator(rng);
            auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), 200);
            for (size_t i = 0; i + 1 < pts.size(); ++i)
                if (g.eval(pts[i]) > g.eval(pts[i + 1])) return false;
            for (double t : pts)
                if (t > g.domain_lo() && std::fabs(g.eval(t - 1e-12) - g.eval(t)) > 1e-9)
                    return false;
        }
        return true;
    }());
    check("mu is additive across a middle cut", [&] {
        for (int trial = 0; trial < 20; ++trial) {
            Derivator g = random_derivator(rng);
            double a = g.domain_lo(), b = g.domain_hi(), m = a + 0.37 * (b - a);
            double lhs = mu(g, {a, m}) + mu(g, {m, b});
            double rhs = mu(g, {a, b});
            if (std::fabs(lhs - rhs) > 1e-15 * std::max(1.0, std::fabs(rhs))) return false;
        }
        return true;
    }());
    check("g is its own derivative's fixed point (g'_g == 1)", [&] {
        for (int trial = 0; trial < 5; ++trial) {
            Derivator g = random_derivator(rng);
            PiecewiseMap gm = as_piecewise(g);
            auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), 40);
            for (double t : pts) {
                GDerivReport r = g_derivative(gm, g, t);
                if (!r.ok() || std::fabs(*r.value - 1.0) > 1e-7) return false;
            }
        }
        return true;
    }());
    check("constants live in every membership class", [&] {
        for (int trial = 0; trial < 5; ++trial) {
            Derivator g = random_derivator(rng);
            PiecewiseMap c = PiecewiseMap::constant(g.domain_lo(), g.domain_hi(), 4.25);
            if (!bd_membership(c, g).verdict) return false;
            if (!is_kernel_member(c, g, 64, 1e-9)) return false;
        }
        return true;
    }());
    check("exponential jump semigroup is exact", [&] {
        PiecewiseMap beta = PiecewiseMap::constant(0.0, 3.0, 1.0);
        PiecewiseMap v = g_exponential_map(beta, ex1);
        for (double t : {1.0, 2.0}) {
            double expect = (1.0 + ex1.delta(t)) * v.eval(t);
            if (v.right_limit(t) != expect) return false;
        }
        return true;
    }());
    check("interval family refinement (every I2 member inside one I1)", [&] {
        for (int trial = 0; trial < 10; ++trial) {
            Derivator g = random_derivator(rng);
            auto i1 = family_I1(g).members;
            auto i2 = family_I2(g).members;
            for (const auto& m : i2) {
                int hits = 0;
                for (const auto& big : i1)
                    if (big.lo <= m.lo && m.hi <= big.hi) ++hits;
                if (hits < 1) return false;
            }
        }
        return true;
    }());
    check("kernel elements are constant on each I2 member", [&] {
        auto fam = family_I2(ex1).members;
        KernelElement k = example1_h(1.0, ex1);
        for (const auto& m : fam) {
            double ref = k.map.eval(m.lo_closed ? m.lo : m.lo + 0.25 * (m.hi - m.lo));
            auto pts = uniform_grid(m.lo, m.hi, 16);
            for (double t : pts)
                if (m.contains(t) && k.map.eval(t) != ref) return false;
        }
        return true;
    }());
    check("chordal symmetry and triangle on random triples", [&] {
        std::uniform_real_distribution<double> dist(-30.0, 30.0);
        for (int i = 0; i < 2000; ++i) {
            double x = dist(rng), y = dist(rng), z = dist(rng);
            if (chordal(x, y) != chordal(y, x)) return false;
            if (chordal(x, z) > chordal(x, y) + chordal(y, z) + 1e-12) return false;
        }
        return true;
    }());
    check("integrate is linear in the integrand", [&] {
        for (int trial = 0; trial < 10; ++trial) {
            Derivator g = random_derivator(rng);
            PiecewiseMap f1 = random_smooth_map(rng, g);
            PiecewiseMap f2 = random_smooth_map(rng, g);
            GInterval itv{g.domain_lo(), g.domain_hi()};
            double lhs = integrate(add(f1, scale(2.0, f2)), g, itv);
            double rhs = integrate(f1, g, itv) + 2.0 * integrate(f2, g, itv);
            if (std::fabs(lhs - rhs) > 1e-9 * std::max(1.0, std::fabs(rhs))) return false;
        }
        return true;
    }());
    check("indefinite integral reproduces the measure of the whole span", [&] {
        for (int trial = 0; trial < 10; ++trial) {
            Derivator g = random_derivator(rng);
            PiecewiseMap one = PiecewiseMap::constant(g.domain_lo(), g.domain_hi(), 1.0);
            PiecewiseMap H = indefinite(one, g);
            double expect = mu(g, {g.domain_lo(), g.domain_hi()});
            if (std::fabs(H.eval(g.domain_hi()) - expect) > 1e-12 * std::max(1.0, expect))
                return false;
        }
        return true;
    }());
    check("cantor iterates stay within the uniform gap bound", [&] {
        for (int n = 1; n <= 8; ++n) {
            PiecewiseMap fn = cantor_iterate_fn(n);
            PiecewiseMap fn1 = cantor_iterate_fn(n + 1);
            double worst = 0.0;
            for (double x : triadic_grid(6))
                worst = std::max(worst, std::fabs(fn1.eval(x) - fn.eval(x)));
            if (worst > std::pow(2.0, -(n + 1)) + 1e-15) return false;
        }
        return true;
    }());

    std::printf("suite: %s\n", failures == 0 ? "all checks passed" : "FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}

}  // namespace
