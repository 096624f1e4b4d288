#include "stieltjes/intervals.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "stieltjes/cantor.hpp"

namespace stieltjes {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Depth-limited membership predicate for the declared Cantor limit; doubles
// are snapped to the nearest rational over 3^depth before the exact digit
// test, which is lossless for the triadic grids this library produces.
std::function<bool(double)> cantor_predicate(int depth, bool half_open) {
    std::int64_t den = Triadic::pow3_value(depth);
    return [den, depth, half_open](double x) {
        if (x < 0.0 || x > 1.0) return false;
        auto num = static_cast<std::int64_t>(std::llround(x * static_cast<double>(den)));
        if (num < 0 || num > den) return false;
        CantorMembership m = cantor_membership(num, den, depth);
        return half_open ? m.in_c_hat : m.in_c;
    };
}

}  // namespace

IntervalFamily family_I1(const Derivator& g) {
    IntervalFamily fam;
    double cursor = g.domain_lo();
    for (const auto& comp : g.constancy_components()) {
        fam.members.push_back({cursor, comp.lo, true, true});
        cursor = comp.hi;
    }
    fam.members.push_back({cursor, g.domain_hi(), true, true});
    if (g.declared_limit() == DeclaredLimit::CantorFunction && g.truncation_depth()) {
        fam.totally_disconnected = true;
        fam.limit_membership = cantor_predicate(*g.truncation_depth(), false);
    }
    return fam;
}

IntervalFamily family_I2(const Derivator& g) {
    IntervalFamily base = family_I1(g);
    std::vector<double> removed;
    for (const auto& [t, dg] : g.jumps()) removed.push_back(t);
    removed.insert(removed.end(), g.ng_plus().begin(), g.ng_plus().end());
    removed = merge_points(std::move(removed));

    IntervalFamily fam;
    for (const auto& m : base.members) {
        double lo = m.lo;
        bool lo_closed = true;
        auto emit = [&fam](double lo_, double hi_, bool loc, bool hic) {
            if (lo_ > hi_) return;
            if (lo_ == hi_ && !(loc && hic)) return;
            fam.members.push_back({lo_, hi_, loc, hic});
        };
        for (double p : removed) {
            if (p < m.lo || p > m.hi) continue;
            emit(lo, p, lo_closed, false);
            lo = p;
            lo_closed = false;
        }
        emit(lo, m.hi, lo_closed, true);
    }
    if (g.declared_limit() == DeclaredLimit::CantorFunction && g.truncation_depth()) {
        fam.totally_disconnected = true;
        fam.limit_membership = cantor_predicate(*g.truncation_depth(), true);
    }
    return fam;
}

namespace {

std::vector<double> dominance_points(const PiecewiseMap& f, const PiecewiseMap& h,
                                     const Derivator& g, int grid_n) {
    auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);
    pts.insert(pts.end(), f.breakpoints().begin(), f.breakpoints().end());
    pts.insert(pts.end(), h.breakpoints().begin(), h.breakpoints().end());
    pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
    return merge_points(std::move(pts));
}

}  // namespace

DominanceReport mvt_dominance_check(const PiecewiseMap& f, const PiecewiseMap& h,
                                    const Derivator& g, MvtFamily family, int grid_n,
                                    double tol) {
    auto pts = dominance_points(f, h, g, grid_n);

    // Hypothesis gate: |f'_g| <= h'_g wherever defined on the sample.
    for (double t : pts) {
        double df = g_derivative_value(f, g, t, std::min(tol, 1e-8));
        double dh = g_derivative_value(h, g, t, std::min(tol, 1e-8));
        double slack = 10.0 * tol * std::max(1.0, std::fabs(dh));
        if (std::fabs(df) > dh + slack)
            fail(ErrorCode::HypothesisFailed,
                 "|f'_g| > h'_g at t=" + fmt(t) + " (" + fmt(std::fabs(df)) + " vs " + fmt(dh) + ")");
    }

    std::vector<IntervalMember> members;
    switch (family) {
        case MvtFamily::I1: members = family_I1(g).members; break;
        case MvtFamily::I2: members = family_I2(g).members; break;
        case MvtFamily::Whole:
            members = {{g.domain_lo(), g.domain_hi(), true, true}};
            break;
    }

    std::vector<double> fv(pts.size()), hv(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        fv[i] = f.eval(pts[i]);
        hv[i] = h.eval(pts[i]);
    }

    DominanceReport rep;
    for (const auto& m : members) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < pts.size(); ++i)
            if (m.contains(pts[i])) idx.push_back(i);
        for (size_t aa = 0; aa < idx.size(); ++aa) {
            for (size_t bb = aa + 1; bb < idx.size(); ++bb) {
                double excess = std::fabs(fv[idx[aa]] - fv[idx[bb]]) -
                                std::fabs(hv[idx[aa]] - hv[idx[bb]]);
                if (excess > rep.worst_excess) {
                    rep.worst_excess = excess;
                    rep.worst_s = pts[idx[aa]];
                    rep.worst_t = pts[idx[bb]];
                }
            }
        }
    }
    rep.ok = rep.worst_excess <= tol;
    return rep;
}

BoundedMvtReport mvt_bounded_check(const PiecewiseMap& f, const Derivator& g, double tol,
                                   int grid_n) {
    IntervalFamily fam = family_I2(g);
    auto grid = uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);

    BoundedMvtReport rep;
    for (const auto& m : fam.members) {
        if (m.singleton()) continue;
        double fc = m.lo_closed ? f.eval(m.lo) : f.right_limit(m.lo);
        double fd = m.hi_closed ? f.eval(m.hi) : f.left_limit(m.hi);
        double gc = m.lo_closed ? g.eval(m.lo) : g.right_limit(m.lo);
        double gd = g.eval(m.hi);  // left-continuity makes this the d- value

        double sup = 0.0;
        auto consider = [&](double t) {
            if (!m.contains(t)) return;
            sup = std::max(sup, std::fabs(g_derivative_value(f, g, t, std::min(tol, 1e-8))));
        };
        for (double t : grid) consider(t);
        if (m.lo_closed) consider(m.lo);
        if (m.hi_closed) consider(m.hi);
        consider(m.lo + 0.5 * (m.hi - m.lo));

        double excess = std::fabs(fd - fc) - sup * (gd - gc);
        if (excess > rep.worst_excess) {
            rep.worst_excess = excess;
            rep.worst_lo = m.lo;
        }
    }
    rep.ok = rep.worst_excess <= tol;
    return rep;
}

MeanSlopeReport ac_mean_slope_check(const PiecewiseMap& f, const Derivator& g, int samples) {
    double a = g.domain_lo(), b = g.domain_hi();
    double denom = g.eval(b) - g.eval(a);
    if (denom <= 0.0) fail(ErrorCode::DegenerateDenominator, "g(b) == g(a)");

    MeanSlopeReport rep;
    rep.slope = (f.eval(b) - f.eval(a)) / denom;
    const double eq_eps = 1e-9 * std::max(1.0, std::fabs(rep.slope));

    for (const auto& [t, dg] : g.jumps()) {
        double d = g_derivative_value(f, g, t);
        if (d >= rep.slope - eq_eps) rep.above_mass += dg;
        if (d <= rep.slope + eq_eps) rep.below_mass += dg;
    }

    auto pts = uniform_grid(a, b, samples);
    pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
    pts.insert(pts.end(), f.breakpoints().begin(), f.breakpoints().end());
    pts = merge_points(std::move(pts));
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double u = pts[i], v = pts[i + 1];
        double mass = g.eval(v) - g.eval(u);
        for (const auto& [t, dg] : g.jumps())
            if (t >= u && t < v) mass -= dg;
        if (mass <= 0.0) continue;
        double d = g_derivative_value(f, g, u + 0.5 * (v - u));
        if (d >= rep.slope - eq_eps) rep.above_mass += mass;
        if (d <= rep.slope + eq_eps) rep.below_mass += mass;
    }
    return rep;
}

}  // namespace stieltjes
