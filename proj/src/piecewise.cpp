#include "stieltjes/piecewise.hpp"

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

}  // namespace

PiecewiseMap PiecewiseMap::build(std::vector<double> breakpoints,
                                 std::vector<SegmentForm> segments,
                                 std::map<double, double> point_values,
                                 std::map<double, double> right_limit_overrides) {
    if (breakpoints.size() < 2) fail(ErrorCode::BadInput, "need at least two breakpoints");
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            fail(ErrorCode::BadInput, "breakpoints must be strictly increasing");
    if (segments.size() + 1 != breakpoints.size())
        fail(ErrorCode::BadInput, "need exactly one segment per breakpoint pair");

    PiecewiseMap f;
    f.breakpoints_ = std::move(breakpoints);
    f.segments_ = std::move(segments);
    f.point_values_.resize(f.breakpoints_.size());
    for (size_t i = 0; i < f.breakpoints_.size(); ++i) {
        double t = f.breakpoints_[i];
        auto it = point_values.find(t);
        if (it != point_values.end()) {
            f.point_values_[i] = it->second;
            point_values.erase(it);
        } else {
            // Default is the left-continuous value; at a, the first segment.
            size_t seg = (i == 0) ? 0 : i - 1;
            f.point_values_[i] = eval_form(f.segments_[seg], t);
        }
        if (!std::isfinite(f.point_values_[i]))
            fail(ErrorCode::BadInput, "non-finite value at breakpoint " + fmt(t));
    }
    if (!point_values.empty())
        fail(ErrorCode::BadInput, "point value at non-breakpoint " + fmt(point_values.begin()->first));
    for (const auto& [t, v] : right_limit_overrides) {
        if (!f.is_breakpoint(t) || t == f.domain_hi())
            fail(ErrorCode::BadInput, "right-limit override at invalid point " + fmt(t));
        if (!std::isfinite(v)) fail(ErrorCode::BadInput, "non-finite right limit at " + fmt(t));
    }
    f.right_overrides_ = std::move(right_limit_overrides);
    return f;
}

PiecewiseMap PiecewiseMap::constant(double a, double b, double value) {
    return build({a, b}, {ConstantForm{value}});
}

bool PiecewiseMap::is_breakpoint(double t) const {
    return std::binary_search(breakpoints_.begin(), breakpoints_.end(), t);
}

size_t PiecewiseMap::segment_index(double t) const {
    if (!contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    if (t == domain_lo()) return 0;
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return static_cast<size_t>(it - breakpoints_.begin()) - 1;
}

double PiecewiseMap::eval(double t) const {
    if (!contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    if (it != breakpoints_.end() && *it == t)
        return point_values_[static_cast<size_t>(it - breakpoints_.begin())];
    return eval_form(segments_[segment_index(t)], t);
}

double PiecewiseMap::left_limit(double t) const {
    if (!contains(t) || t == domain_lo()) fail(ErrorCode::OutOfDomain, "left limit at t=" + fmt(t));
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    if (it != breakpoints_.end() && *it == t) {
        size_t idx = static_cast<size_t>(it - breakpoints_.begin());
        return eval_form(segments_[idx - 1], t);
    }
    return eval_form(segments_[segment_index(t)], t);
}

double PiecewiseMap::right_limit(double t) const {
    if (!contains(t) || t == domain_hi()) fail(ErrorCode::OutOfDomain, "right limit at t=" + fmt(t));
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    if (it != breakpoints_.end() && *it == t) {
        auto ov = right_overrides_.find(t);
        if (ov != right_overrides_.end()) return ov->second;
        size_t idx = static_cast<size_t>(it - breakpoints_.begin());
        return eval_form(segments_[idx], t);
    }
    return eval_form(segments_[segment_index(t)], t);
}

double PiecewiseMap::gap_to_next_breakpoint(double t, bool right) const {
    if (!contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    if (right) {
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
        if (it == breakpoints_.end()) return 0.0;
        return *it - t;
    }
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    if (it == breakpoints_.begin()) return 0.0;
    return t - *(it - 1);
}

double star_eval(const PiecewiseMap& f, const Derivator& g, double t) {
    return f.eval(g.classify(t).t_star);
}

double value_scale(const PiecewiseMap& f) {
    double m = 1.0;
    for (double v : f.point_values()) m = std::max(m, std::fabs(v));
    return m;
}

namespace {

PiecewiseMap combine(const PiecewiseMap& f1, const PiecewiseMap& f2,
                     SegmentForm (*op_form)(const SegmentForm&, const SegmentForm&),
                     double (*op)(double, double)) {
    if (f1.domain_lo() != f2.domain_lo() || f1.domain_hi() != f2.domain_hi())
        fail(ErrorCode::DomainMismatch, "piecewise algebra requires equal domains");

    std::vector<double> bps = f1.breakpoints();
    bps.insert(bps.end(), f2.breakpoints().begin(), f2.breakpoints().end());
    bps = merge_points(std::move(bps));

    std::vector<SegmentForm> segs;
    segs.reserve(bps.size() - 1);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double mid = bps[i] + 0.5 * (bps[i + 1] - bps[i]);
        segs.push_back(op_form(f1.segments()[f1.segment_index(mid)],
                               f2.segments()[f2.segment_index(mid)]));
    }

    std::map<double, double> values;
    std::map<double, double> rights;
    for (double t : bps) values[t] = op(f1.eval(t), f2.eval(t));
    for (size_t i = 0; i + 1 < bps.size(); ++i)
        rights[bps[i]] = op(f1.right_limit(bps[i]), f2.right_limit(bps[i]));
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values),
                               std::move(rights));
}

}  // namespace

PiecewiseMap add(const PiecewiseMap& f1, const PiecewiseMap& f2) {
    return combine(f1, f2, [](const SegmentForm& a, const SegmentForm& b) { return add_forms(a, b); },
                   [](double a, double b) { return a + b; })
        .with_eval_noise(f1.eval_noise() + f2.eval_noise());
}

PiecewiseMap multiply(const PiecewiseMap& f1, const PiecewiseMap& f2) {
    return combine(f1, f2,
                   [](const SegmentForm& a, const SegmentForm& b) { return multiply_forms(a, b); },
                   [](double a, double b) { return a * b; })
        .with_eval_noise(f1.eval_noise() * value_scale(f2) + f2.eval_noise() * value_scale(f1));
}

PiecewiseMap divide(const PiecewiseMap& f1, const PiecewiseMap& f2) {
    double denom_floor = value_scale(f2);
    for (double v : f2.point_values())
        if (v != 0.0) denom_floor = std::min(denom_floor, std::fabs(v));
    double noise =
        (f1.eval_noise() + f2.eval_noise() * value_scale(f1) / denom_floor) / denom_floor;
    return combine(f1, f2,
                   [](const SegmentForm& a, const SegmentForm& b) { return divide_forms(a, b); },
                   [](double a, double b) {
                       if (b == 0.0) fail(ErrorCode::ZeroDenominator, "division by zero value");
                       return a / b;
                   })
        .with_eval_noise(noise);
}

PiecewiseMap scale(double c, const PiecewiseMap& f) {
    std::vector<SegmentForm> segs;
    segs.reserve(f.segments().size());
    for (const auto& s : f.segments()) segs.push_back(scale_form(c, s));
    std::map<double, double> values, rights;
    for (size_t i = 0; i < f.breakpoints().size(); ++i)
        values[f.breakpoints()[i]] = c * f.point_values()[i];
    for (const auto& [t, v] : f.right_limit_overrides()) rights[t] = c * v;
    return PiecewiseMap::build(f.breakpoints(), std::move(segs), std::move(values),
                               std::move(rights))
        .with_eval_noise(std::fabs(c) * f.eval_noise());
}

PiecewiseMap offset(const PiecewiseMap& f, double c) {
    std::vector<SegmentForm> segs;
    segs.reserve(f.segments().size());
    for (const auto& s : f.segments()) segs.push_back(offset_form(s, c));
    std::map<double, double> values, rights;
    for (size_t i = 0; i < f.breakpoints().size(); ++i)
        values[f.breakpoints()[i]] = f.point_values()[i] + c;
    for (const auto& [t, v] : f.right_limit_overrides()) rights[t] = v + c;
    return PiecewiseMap::build(f.breakpoints(), std::move(segs), std::move(values),
                               std::move(rights))
        .with_eval_noise(f.eval_noise());
}

PiecewiseMap as_piecewise(const Derivator& g) {
    std::map<double, double> values, rights;
    for (double t : g.breakpoints()) values[t] = g.eval(t);
    for (const auto& [t, dg] : g.jumps())
        if (t != g.domain_hi()) rights[t] = g.eval(t) + dg;
    return PiecewiseMap::build(g.breakpoints(), g.segments(), std::move(values),
                               std::move(rights));
}

double sup_norm(const PiecewiseMap& f, int grid_n) {
    auto pts = uniform_grid(f.domain_lo(), f.domain_hi(), grid_n);
    pts.insert(pts.end(), f.breakpoints().begin(), f.breakpoints().end());
    pts = merge_points(std::move(pts));
    double m = 0.0;
    for (double t : pts) {
        m = std::max(m, std::fabs(f.eval(t)));
        if (t > f.domain_lo()) m = std::max(m, std::fabs(f.left_limit(t)));
        if (t < f.domain_hi()) m = std::max(m, std::fabs(f.right_limit(t)));
    }
    return m;
}

namespace {

// One side of the Definition-3.1 sample. Offsets sweep geometrically from
// the domain edge down to fp resolution so both the far end of a plateau
// and the local limit behaviour are visited.
bool side_g_continuous(const PiecewiseMap& f, const Derivator& g, double t, bool right,
                       double tol) {
    const double edge = right ? (g.domain_hi() - t) : (t - g.domain_lo());
    if (edge <= 0.0) return true;
    const double gscale = std::max(1.0, std::fabs(g.eval(t)));
    const double plateau_eps = 1e-13 * gscale;
    const double ft = f.eval(t);
    const double gt = g.eval(t);

    std::vector<double> dgs, dfs;
    double h = edge;
    for (int j = 0; j <= 64; ++j, h *= 0.5) {
        double s = right ? t + h : t - h;
        if (s == t) break;
        if (s < g.domain_lo()) s = g.domain_lo();
        if (s > g.domain_hi()) s = g.domain_hi();
        double dg = std::fabs(g.eval(s) - gt);
        double df = std::fabs(f.eval(s) - ft);
        if (dg <= plateau_eps && df > tol) return false;
        dgs.push_back(dg);
        dfs.push_back(df);
    }
    if (dgs.empty()) return true;
    // g vanishing from this side means the limit clause is active: the last
    // sampled f-gaps must vanish too. A bounded-away g-gap (a jump of g on
    // this side) makes the clause vacuous.
    if (dgs.back() <= 1e-9 * gscale) {
        double tail_df = 0.0;
        for (size_t k = dfs.size() >= 3 ? dfs.size() - 3 : 0; k < dfs.size(); ++k)
            tail_df = std::max(tail_df, dfs[k]);
        return tail_df <= tol;
    }
    return true;
}

}  // namespace

bool is_g_continuous_at(const PiecewiseMap& f, const Derivator& g, double t, double tol,
                        Side side) {
    if (!f.contains(t) || !g.contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    if (g.classify(t).cls == PointClass::ConstancyInterior) return true;
    bool ok = true;
    if (side != Side::Right) ok = ok && side_g_continuous(f, g, t, false, tol);
    if (side != Side::Left) ok = ok && side_g_continuous(f, g, t, true, tol);
    return ok;
}

BDReport bd_membership(const PiecewiseMap& f, const Derivator& g, double tol, int grid_n) {
    BDReport rep;
    auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);
    pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
    pts.insert(pts.end(), f.breakpoints().begin(), f.breakpoints().end());
    pts = merge_points(std::move(pts));

    rep.is_bounded = true;
    for (double t : pts) {
        if (!std::isfinite(f.eval(t))) rep.is_bounded = false;
        if (t > f.domain_lo() && !std::isfinite(f.left_limit(t))) rep.is_bounded = false;
        if (t < f.domain_hi() && !std::isfinite(f.right_limit(t))) rep.is_bounded = false;
    }

    rep.g_continuous_off_exceptional = true;
    rep.left_g_continuous_on_ng_minus = true;
    rep.right_g_continuous_on_ng_plus = true;
    for (double t : pts) {
        switch (g.classify(t).cls) {
            case PointClass::Regular:
                if (!is_g_continuous_at(f, g, t, tol, Side::Both))
                    rep.g_continuous_off_exceptional = false;
                break;
            case PointClass::NgMinus:
                if (!is_g_continuous_at(f, g, t, tol, Side::Left))
                    rep.left_g_continuous_on_ng_minus = false;
                break;
            case PointClass::NgPlus:
                if (!is_g_continuous_at(f, g, t, tol, Side::Right))
                    rep.right_g_continuous_on_ng_plus = false;
                break;
            case PointClass::Jump:
            case PointClass::ConstancyInterior:
                break;
        }
    }
    rep.verdict = rep.is_bounded && rep.g_continuous_off_exceptional &&
                  rep.left_g_continuous_on_ng_minus && rep.right_g_continuous_on_ng_plus;
    return rep;
}

}  // namespace stieltjes
