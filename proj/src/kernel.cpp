#include "stieltjes/kernel.hpp"

#include <algorithm>
#include <sstream>

#include "stieltjes/gexp.hpp"

namespace stieltjes {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Pieces of [a,b] with the jump points of g removed; each piece carries the
// half-open span [start, end) except the last, which reaches b inclusively.
std::vector<std::pair<double, double>> dg_components(const Derivator& g) {
    std::vector<std::pair<double, double>> comps;
    double lo = g.domain_lo();
    for (const auto& [t, dg] : g.jumps()) {
        if (t > lo) comps.push_back({lo, t});
        lo = t;
    }
    comps.push_back({lo, g.domain_hi()});
    return comps;
}

PiecewiseMap step_over_jumps(const Derivator& g, const std::vector<double>& values) {
    auto comps = dg_components(g);
    if (values.size() != comps.size())
        fail(ErrorCode::BadInput, "need one value per component of [a,b] minus D_g, got " +
                                      std::to_string(values.size()) + " for " +
                                      std::to_string(comps.size()));
    for (double v : values)
        if (!std::isfinite(v)) fail(ErrorCode::BadInput, "non-finite step value");

    std::vector<double> bps;
    std::vector<SegmentForm> segs;
    std::map<double, double> point_values;
    bps.push_back(g.domain_lo());
    point_values[g.domain_lo()] = values.front();
    for (size_t i = 0; i < comps.size(); ++i) {
        segs.push_back(ConstantForm{values[i]});
        bps.push_back(comps[i].second);
        // Right continuity at a jump: the value at the boundary belongs to
        // the component on the right.
        point_values[comps[i].second] = (i + 1 < comps.size()) ? values[i + 1] : values[i];
    }
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(point_values));
}

}  // namespace

PiecewiseMap star_map(const PiecewiseMap& f, const Derivator& g) {
    std::vector<double> bps = f.breakpoints();
    bps.insert(bps.end(), g.breakpoints().begin(), g.breakpoints().end());
    bps = merge_points(std::move(bps));

    std::vector<SegmentForm> segs;
    std::map<double, double> values, rights;
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double mid = bps[i] + 0.5 * (bps[i + 1] - bps[i]);
        PointClassification pc = g.classify(mid);
        if (pc.cls == PointClass::ConstancyInterior) {
            segs.push_back(ConstantForm{f.eval(pc.t_star)});
        } else {
            segs.push_back(f.segments()[f.segment_index(mid)]);
        }
    }
    for (double t : bps) values[t] = star_eval(f, g, t);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double t = bps[i];
        double probe = t + 0.25 * (bps[i + 1] - t);
        PointClassification pc = g.classify(probe);
        rights[t] = (pc.cls == PointClass::ConstancyInterior) ? f.eval(pc.t_star)
                                                              : f.right_limit(t);
    }
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values),
                               std::move(rights))
        .with_eval_noise(f.eval_noise());
}

KernelElement step_kernel(const Derivator& g, const std::vector<double>& values) {
    if (!g.closure_conditions().dg_accum_ok)
        fail(ErrorCode::ClosureConditionFailed, "D_g' not contained in D_g");
    KernelElement k{step_over_jumps(g, values), KernelConstruction::StepOverDg};
    return k;
}

KernelElement example1_h(const PiecewiseMap& beta, const Derivator& g) {
    if (!g.closure_conditions().dg_accum_ok)
        fail(ErrorCode::ClosureConditionFailed, "D_g' not contained in D_g");
    auto comps = dg_components(g);
    std::vector<double> values;
    values.reserve(comps.size());
    double product = 1.0;
    size_t idx = 0;
    // Component i > 0 starts at jump point d_i; its value divides by the
    // running product through d_i.
    for (const auto& [t, dg] : g.jumps()) {
        if (idx == 0 && !comps.empty() && comps.front().first < t) values.push_back(1.0);
        double factor = 1.0 + beta.eval(t) * dg;
        if (std::fabs(factor) < 1e-14)
            fail(ErrorCode::RegressivityViolation, "1 + beta dg vanishes at t=" + fmt(t));
        product *= factor;
        values.push_back(1.0 / product);
        ++idx;
    }
    if (values.empty()) values.push_back(1.0);
    KernelElement k{step_over_jumps(g, values), KernelConstruction::Example1Inverse};
    return k;
}

KernelElement example1_h(double beta_constant, const Derivator& g) {
    return example1_h(PiecewiseMap::constant(g.domain_lo(), g.domain_hi(), beta_constant), g);
}

bool is_kernel_member(const PiecewiseMap& f, const Derivator& g,
                      const std::vector<double>& grid, double tol) {
    std::vector<double> pts = grid;
    pts.push_back(g.domain_lo());
    pts.push_back(g.domain_hi());
    for (const auto& [t, dg] : g.jumps()) pts.push_back(t);
    pts.insert(pts.end(), g.ng_minus().begin(), g.ng_minus().end());
    pts.insert(pts.end(), g.ng_plus().begin(), g.ng_plus().end());
    for (const auto& comp : g.constancy_components())
        pts.push_back(comp.lo + 0.5 * (comp.hi - comp.lo));
    pts = merge_points(std::move(pts));

    // The tolerance applies on top of each estimate's own resolution, so
    // exact step constructions are checked at tol while numerically built
    // residues are checked as sharply as their evaluation noise permits.
    for (double t : pts) {
        GDerivReport rep = g_derivative(f, g, t, tol);
        if (!rep.ok() || std::fabs(*rep.value) > tol + rep.uncertainty) return false;
    }

    // Cross-validation through the product identity: (f g)'_g must agree
    // with f* since g'_g == 1. Exact for locally constant candidates.
    PiecewiseMap fg = multiply(f, as_piecewise(g));
    size_t stride = std::max<size_t>(1, pts.size() / 64);
    for (size_t i = 0; i < pts.size(); i += stride) {
        double t = pts[i];
        GDerivReport rep = g_derivative(fg, g, t, tol);
        if (!rep.ok()) return false;
        if (std::fabs(*rep.value - star_eval(f, g, t)) >
            tol * std::max(1.0, std::fabs(star_eval(f, g, t))) + rep.uncertainty)
            return false;
    }
    return true;
}

bool is_kernel_member(const PiecewiseMap& f, const Derivator& g, int grid_n, double tol) {
    return is_kernel_member(f, g, uniform_grid(g.domain_lo(), g.domain_hi(), grid_n), tol);
}

KernelElement user_kernel(const PiecewiseMap& f, const Derivator& g, double tol) {
    for (const auto& [t, dg] : g.jumps()) {
        double scale = std::max(1.0, std::fabs(f.eval(t)));
        if (std::fabs(f.right_limit(t) - f.eval(t)) > tol * scale)
            fail(ErrorCode::RightContinuityViolation, "candidate jumps at t=" + fmt(t));
    }
    if (!is_kernel_member(f, g, 256, tol))
        fail(ErrorCode::KernelViolation, "candidate has nonzero g-derivative");
    return {f, KernelConstruction::UserSupplied};
}

AdditiveDecomposition additive_decompose(const PiecewiseMap& f, const Derivator& g,
                                         double tol) {
    PiecewiseMap deriv = g_derivative_fn(f, g, std::min(tol, 1e-9));
    PiecewiseMap h = offset(indefinite(deriv, g), f.eval(f.domain_lo()));
    PiecewiseMap rho = add(f, scale(-1.0, h));
    if (!is_kernel_member(rho, g, 128, std::max(tol, 1e-8)))
        fail(ErrorCode::IntegrationFailure, "residue of the decomposition is not in the kernel");
    return {std::move(h), std::move(rho)};
}

MultiplicativeDecomposition multiplicative_decompose(const PiecewiseMap& f,
                                                     const Derivator& g, double tol) {
    for (const auto& [t, dg] : g.jumps()) {
        if (f.eval(t) == 0.0) fail(ErrorCode::ZeroDenominator, "f vanishes at jump t=" + fmt(t));
        if (std::fabs(f.right_limit(t)) < 1e-14 * std::max(1.0, std::fabs(f.eval(t))))
            fail(ErrorCode::RegressivityViolation, "f(t+) vanishes at t=" + fmt(t));
    }
    PiecewiseMap deriv = g_derivative_fn(f, g, std::min(tol, 1e-9));
    PiecewiseMap fstar = star_map(f, g);
    PiecewiseMap p = divide(deriv, fstar);
    PiecewiseMap u = g_exponential_map(p, g);
    PiecewiseMap rho = divide(f, u);
    if (!is_kernel_member(rho, g, 128, std::max(tol, 1e-7)))
        fail(ErrorCode::IntegrationFailure, "f/u is not in the kernel");
    return {std::move(rho), std::move(u)};
}

AeZeroReport ae_zero_forces_zero_check(const PiecewiseMap& f, const Derivator& g, int grid_n,
                                       double tol) {
    AeZeroReport rep;
    BDReport bd = bd_membership(f, g);
    if (!bd.verdict) {
        rep.applicable = false;
        rep.held = true;
        rep.note = "NotInBD";
        return rep;
    }
    double atom_max = 0.0;
    for (const auto& [t, dg] : g.jumps()) atom_max = std::max(atom_max, std::fabs(f.eval(t)));
    auto dense = uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);
    double dense_max = 0.0;
    for (double t : dense) dense_max = std::max(dense_max, std::fabs(f.eval(t)));
    if (std::max(atom_max, dense_max) > tol) {
        rep.applicable = false;
        rep.note = "premise fails: f is not a.e. zero on the sample";
        return rep;
    }
    double full_max = sup_norm(f, 4 * grid_n);
    rep.held = full_max <= tol;
    if (!rep.held) rep.note = "nonzero value survived: sup=" + fmt(full_max);
    return rep;
}

Derivator ae_witness_derivator(int depth) {
    if (depth < 2 || depth > 40) fail(ErrorCode::BadInput, "depth in [2,40] required");
    std::vector<double> jump_points;
    for (int n = 2; n <= depth; ++n) {
        jump_points.push_back(-1.0 / n);
        jump_points.push_back(1.0 / n);
    }
    jump_points = merge_points(std::move(jump_points));

    std::vector<double> bps;
    bps.push_back(-1.0);
    bps.insert(bps.end(), jump_points.begin(), jump_points.end());
    bps.push_back(1.0);

    std::map<double, double> jumps;
    for (double t : jump_points) {
        int n = static_cast<int>(std::llround(1.0 / std::fabs(t)));
        jumps[t] = std::pow(2.0, -n);
    }

    std::vector<SegmentForm> segs;
    double shift = 0.0;
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        auto it = jumps.find(bps[i]);
        if (it != jumps.end()) shift += it->second;
        segs.push_back(AffineForm{1.0, shift});
    }
    return Derivator::build(-1.0, 1.0, std::move(bps), std::move(segs), std::move(jumps),
                            DeclaredLimit::JumpAccumulation, depth);
}

PiecewiseMap ae_witness_map(int depth) {
    if (depth < 2 || depth > 40) fail(ErrorCode::BadInput, "depth in [2,40] required");
    std::vector<double> bps;
    std::vector<SegmentForm> segs;
    std::map<double, double> values;

    // Negative side: -1/m on [-1/m, -1/(m+1)) for m = 1..depth-1, with the
    // convention that the first piece starts at -1.
    bps.push_back(-1.0);
    values[-1.0] = -1.0;
    for (int m = 1; m < depth; ++m) {
        segs.push_back(ConstantForm{-1.0 / m});
        double next = -1.0 / (m + 1);
        bps.push_back(next);
        values[next] = next;
    }
    // Identity fill across the truncation window (-1/depth, 1/depth).
    segs.push_back(AffineForm{1.0, 0.0});
    bps.push_back(1.0 / depth);
    values[1.0 / depth] = 1.0 / depth;
    // Positive side: 1/m on [1/m, 1/(m-1)) for m = depth..2; continuous at 1.
    for (int m = depth; m >= 2; --m) {
        segs.push_back(ConstantForm{1.0 / m});
        double next = (m == 2) ? 1.0 : 1.0 / (m - 1);
        bps.push_back(next);
        values[next] = (m == 2) ? 0.5 : 1.0 / (m - 1);
    }
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values));
}

}  // namespace stieltjes
