#include "stieltjes/gexp.hpp"

#include <algorithm>
#include <sstream>

namespace stieltjes {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

double jump_factor(const PiecewiseMap& p, double t, double dg) {
    double factor = 1.0 + p.eval(t) * dg;
    if (std::fabs(factor) < 1e-14)
        fail(ErrorCode::RegressivityViolation, "1 + p dg vanishes at t=" + fmt(t));
    return factor;
}

}  // namespace

double g_exponential(const PiecewiseMap& p, const Derivator& g, double t, double quad_tol) {
    if (!g.contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    double product = 1.0;
    for (const auto& [s, dg] : g.jumps()) {
        double factor = jump_factor(p, s, dg);  // regressivity checked on all of D_g
        if (s < t) product *= factor;
    }
    double cont = integrate_minus_jumps(p, g, {g.domain_lo(), t}, quad_tol);
    return product * std::exp(cont);
}

PiecewiseMap g_exponential_map(const PiecewiseMap& p, const Derivator& g, double quad_tol) {
    std::vector<double> bps = p.breakpoints();
    bps.insert(bps.end(), g.breakpoints().begin(), g.breakpoints().end());
    bps = merge_points(std::move(bps));

    std::vector<SegmentForm> segs;
    std::map<double, double> values, rights;
    double cur = 1.0;
    values[bps.front()] = cur;
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double u = bps[i], v = bps[i + 1];
        double du = g.delta(u);
        double cur_right = (du > 0.0) ? cur * jump_factor(p, u, du) : cur;
        if (du > 0.0) rights[u] = cur_right;

        double mid = u + 0.5 * (v - u);
        const SegmentForm& ps = p.segments()[p.segment_index(mid)];
        const SegmentForm& gs = g.segments()[g.segment_index(mid)];
        if (is_constant_form(gs)) {
            segs.push_back(ConstantForm{cur_right});
            cur = cur_right;
        } else if (std::holds_alternative<ConstantForm>(ps) &&
                   std::holds_alternative<AffineForm>(gs)) {
            double rate = std::get<ConstantForm>(ps).level * std::get<AffineForm>(gs).slope;
            segs.push_back(ExpForm{cur_right, rate, u});
            cur = cur_right * std::exp(rate * (v - u));
        } else {
            auto ps_copy = ps;
            auto gs_copy = gs;
            segs.push_back(CustomForm{[ps_copy, gs_copy, u, cur_right, quad_tol](double x) {
                return cur_right * std::exp(span_mu_integral(ps_copy, gs_copy, u, x, quad_tol));
            }});
            cur = cur_right * std::exp(span_mu_integral(ps, gs, u, v, quad_tol));
        }
        values[v] = cur;
    }
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values),
                               std::move(rights));
}

PiecewiseMap solve_homogeneous_ac(const LinearProblem& problem, double quad_tol) {
    if (problem.forcing)
        fail(ErrorCode::BadInput, "homogeneous solver called with a forcing term");
    return scale(problem.v0, g_exponential_map(problem.beta, problem.g, quad_tol));
}

PiecewiseMap nonunique_solutions(const LinearProblem& problem, const KernelElement& h,
                                 double quad_tol) {
    double a = problem.g.domain_lo();
    if (std::fabs(h.map.eval(a) - 1.0) > 1e-12)
        fail(ErrorCode::InitialValueMismatch, "kernel multiplier must satisfy h(a) = 1");
    if (!is_kernel_member(h.map, problem.g, 128, 1e-8))
        fail(ErrorCode::KernelViolation, "multiplier is not in the kernel");
    LinearProblem homogeneous = problem;
    homogeneous.forcing.reset();
    PiecewiseMap v = solve_homogeneous_ac(homogeneous, quad_tol);
    return multiply(h.map, v);
}

double residual_check(const PiecewiseMap& v, const LinearProblem& problem, int grid_n,
                      double deriv_tol) {
    const Derivator& g = problem.g;
    auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);
    pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
    pts.insert(pts.end(), v.breakpoints().begin(), v.breakpoints().end());
    pts = merge_points(std::move(pts));

    double worst = 0.0;
    for (double t : pts) {
        if (g.classify(t).cls == PointClass::ConstancyInterior) continue;
        double dv = g_derivative_value(v, g, t, deriv_tol);
        double residual = dv - problem.beta.eval(t) * v.eval(t);
        if (problem.forcing) residual -= problem.forcing->eval(t);
        worst = std::max(worst, std::fabs(residual));
    }
    return worst;
}

PiecewiseMap solve_forced(const LinearProblem& problem, double tol, int grid_n) {
    if (!problem.forcing) {
        LinearProblem h = problem;
        return solve_homogeneous_ac(h, 1e-10);
    }
    const Derivator& g = problem.g;
    const PiecewiseMap& f = *problem.forcing;
    PiecewiseMap E = g_exponential_map(problem.beta, g, 1e-12);

    // Integrand of the variation-of-constants integral: f / E(s+) as a
    // map, with the jump divisor folded into the atom values.
    PiecewiseMap w = divide(f, E);
    std::map<double, double> w_values;
    for (size_t i = 0; i < w.breakpoints().size(); ++i) {
        double t = w.breakpoints()[i];
        double dg = g.delta(t);
        if (dg > 0.0) {
            w_values[t] = f.eval(t) / E.right_limit(t);
        } else {
            w_values[t] = w.point_values()[i];
        }
    }
    PiecewiseMap w_fixed = PiecewiseMap::build(w.breakpoints(), w.segments(),
                                               std::move(w_values),
                                               w.right_limit_overrides());
    PiecewiseMap integral = indefinite(w_fixed, g, 1e-12);
    PiecewiseMap v = multiply(E, offset(integral, problem.v0));
    // The sweep compares at absolute tol while the solution can be large;
    // the derivative estimates must resolve well below that.
    double worst = residual_check(v, problem, grid_n, std::min(tol * 1e-2, 1e-10));
    if (worst > tol)
        fail(ErrorCode::ResidualTooLarge,
             "variation-of-constants candidate fails its residual sweep: " + fmt(worst));
    return v;
}

}  // namespace stieltjes
