#include "stieltjes/gdiff.hpp"

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

struct SideEstimate {
    std::optional<double> value;
    double uncertainty = 0.0;  // acceptance band at stabilization
    bool diverged = false;
    double last_quotient = 0.0;
    int valid_quotients = 0;
};

// One-sided limit of (f(s) - f(t0)) / (g(s) - g(t0)) as s -> t0 from the
// requested side. Offsets halve from h0; quotients are driven through two
// Richardson levels (removing the linear and quadratic offset terms) and
// accepted once three consecutive extrapolants agree within a band that
// respects the rounding noise of the operands.
SideEstimate one_sided_limit(const PiecewiseMap& f, const Derivator& g, double t0,
                             bool right, double tol) {
    SideEstimate est;
    const double edge = right ? (g.domain_hi() - t0) : (t0 - g.domain_lo());
    if (edge <= 0.0) return est;

    double gap = std::min(f.gap_to_next_breakpoint(t0, right),
                          g.gap_to_next_breakpoint(t0, right));
    if (gap <= 0.0) gap = edge;
    double h0 = std::min({1e-2, gap * 0.5, edge});

    const double ft = f.eval(t0);
    const double gt = g.eval(t0);
    const double tau_floor = tol * 0.1;

    double q1 = 0.0;
    int have_q = 0;
    double r_prev = 0.0;
    bool have_r = false;
    double rr1 = 0.0, rr2 = 0.0;
    bool have_rr = false;
    int stable = 0;
    double grow_ref = 0.0;
    int grow_count = 0;
    double max_abs_q = 0.0;

    double h = h0;
    for (int k = 0; k <= 46; ++k, h *= 0.5) {
        double s = right ? t0 + h : t0 - h;
        if (s == t0) break;
        if (s < g.domain_lo() || s > g.domain_hi()) continue;
        double gs = g.eval(s);
        if (gs == gt) {  // g has not moved: outside the quotient domain
            have_q = 0;
            have_r = false;
            stable = 0;
            continue;
        }
        double fs = f.eval(s);
        double fdiff = fs - ft;
        double gd = gs - gt;
        // Noise floor: differences at the rounding level of the operands --
        // or below the map's own declared evaluation noise -- are
        // indistinguishable from zero.
        double floor = std::max(f.eval_noise(),
                                64.0 * std::numeric_limits<double>::epsilon() *
                                    (1.0 + std::fabs(ft) + std::fabs(fs)));
        if (std::fabs(fdiff) <= floor) {
            double resolution_q = floor / std::fabs(gd);
            if (max_abs_q > 4.0 * resolution_q) {
                // The signal dropped below the evaluation resolution after
                // clearly nonzero quotients: the best extrapolant so far is
                // the answer at this resolution.
                est.value = have_rr ? rr1 : (have_q >= 1 ? q1 : 0.0);
                est.uncertainty = 2.0 * resolution_q + 4.0 * tau_floor;
                return est;
            }
            fdiff = 0.0;
        }
        double q = fdiff / gd;
        // Band covering per-evaluation rounding plus declared map noise, as
        // seen through the quotient at this offset; the Richardson levels
        // amplify it by about an order of magnitude.
        double qband = (64.0 * std::numeric_limits<double>::epsilon() *
                            (1.0 + std::fabs(ft) + std::fabs(fs)) +
                        8.0 * f.eval_noise()) /
                       std::fabs(gd);
        est.last_quotient = q;
        ++est.valid_quotients;
        max_abs_q = std::max(max_abs_q, std::fabs(q));

        if (std::fabs(q) > std::max(1.0, grow_ref) * 1.5) {
            ++grow_count;
            grow_ref = std::fabs(q);
        }

        if (have_q >= 1) {
            double r = 2.0 * q - q1;
            if (have_r) {
                double rr = (4.0 * r - r_prev) / 3.0;
                if (stable > 0) {
                    double tau = std::max({tau_floor, tau_floor * std::fabs(rr), qband});
                    if (std::fabs(rr - rr1) <= tau && (stable < 2 || std::fabs(rr1 - rr2) <= tau)) {
                        ++stable;
                    } else {
                        stable = 1;
                    }
                } else {
                    stable = 1;
                }
                rr2 = rr1;
                rr1 = rr;
                have_rr = true;
                if (stable >= 3) {
                    est.value = rr;
                    est.uncertainty =
                        2.0 * std::max({tau_floor, tau_floor * std::fabs(rr), qband});
                    return est;
                }
            } else {
                have_r = true;
            }
            r_prev = r;
        }
        q1 = q;
        have_q = std::min(have_q + 1, 2);
    }
    if (grow_count >= 5 && std::fabs(est.last_quotient) > 1e8) est.diverged = true;
    return est;
}

GDerivReport right_sided_report(const PiecewiseMap& f, const Derivator& g, double t,
                                DerivMode mode, double tol) {
    GDerivReport rep;
    rep.mode = mode;
    double dg = g.delta(t);
    if (dg > 0.0) {
        double num = f.right_limit(t) - f.eval(t);
        if (std::fabs(num) <= f.eval_noise()) num = 0.0;
        rep.value = num / dg;
        rep.uncertainty = f.eval_noise() / dg;
        return rep;
    }
    SideEstimate est = one_sided_limit(f, g, t, true, tol);
    if (est.value) {
        rep.value = est.value;
        rep.uncertainty = est.uncertainty;
        return rep;
    }
    DerivFailure fail_info;
    fail_info.kind = est.diverged ? DerivFailure::Kind::Diverges : DerivFailure::Kind::Undefined;
    rep.failure = fail_info;
    return rep;
}

}  // namespace

GDerivReport g_derivative(const PiecewiseMap& f, const Derivator& g, double t, double tol) {
    if (!g.contains(t) || !f.contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    PointClassification pc = g.classify(t);
    switch (pc.cls) {
        case PointClass::Jump:
            return right_sided_report(f, g, t, DerivMode::RightAtJump, tol);
        case PointClass::ConstancyInterior:
            // The definition reads the quotient to the right of the
            // component's endpoint b_n, whether or not b_n carries a jump.
            return right_sided_report(f, g, pc.t_star, DerivMode::RightAtBn, tol);
        case PointClass::NgPlus: {
            // Points left of t share g's value, so the punctured two-sided
            // limit only sees the right side.
            GDerivReport rep = right_sided_report(f, g, t, DerivMode::TwoSided, tol);
            return rep;
        }
        case PointClass::NgMinus: {
            GDerivReport rep;
            rep.mode = DerivMode::TwoSided;
            SideEstimate est = one_sided_limit(f, g, t, false, tol);
            if (est.value) {
                rep.value = est.value;
                rep.uncertainty = est.uncertainty;
            } else {
                DerivFailure fl;
                fl.kind = est.diverged ? DerivFailure::Kind::Diverges
                                       : DerivFailure::Kind::Undefined;
                rep.failure = fl;
            }
            return rep;
        }
        case PointClass::Regular: {
            GDerivReport rep;
            rep.mode = DerivMode::TwoSided;
            bool at_lo = (t == g.domain_lo());
            bool at_hi = (t == g.domain_hi());
            SideEstimate left = at_lo ? SideEstimate{} : one_sided_limit(f, g, t, false, tol);
            SideEstimate right = at_hi ? SideEstimate{} : one_sided_limit(f, g, t, true, tol);
            if (at_lo || at_hi) {
                const SideEstimate& only = at_lo ? right : left;
                if (only.value) {
                    rep.value = only.value;
                    rep.uncertainty = only.uncertainty;
                } else {
                    DerivFailure fl;
                    fl.kind = only.diverged ? DerivFailure::Kind::Diverges
                                            : DerivFailure::Kind::Undefined;
                    rep.failure = fl;
                }
                return rep;
            }
            if (left.value && right.value) {
                double scale = std::max({1.0, std::fabs(*left.value), std::fabs(*right.value)});
                // Disagreement below the estimates' own resolution is not a
                // mismatch; near-breakpoint points leave only a narrow clean
                // offset window and correspondingly coarse estimates.
                double resolution = 8.0 * (left.uncertainty + right.uncertainty);
                if (std::fabs(*left.value - *right.value) >
                    std::max(10.0 * tol * scale, resolution)) {
                    DerivFailure fl;
                    fl.kind = DerivFailure::Kind::LeftRightMismatch;
                    fl.left = *left.value;
                    fl.right = *right.value;
                    rep.failure = fl;
                } else {
                    rep.value = 0.5 * (*left.value + *right.value);
                    rep.uncertainty = std::max(left.uncertainty, right.uncertainty) +
                                      0.5 * std::fabs(*left.value - *right.value);
                }
                return rep;
            }
            DerivFailure fl;
            fl.kind = (left.diverged || right.diverged) ? DerivFailure::Kind::Diverges
                                                        : DerivFailure::Kind::Undefined;
            rep.failure = fl;
            return rep;
        }
    }
    GDerivReport rep;
    rep.failure = DerivFailure{};
    return rep;
}

double g_derivative_value(const PiecewiseMap& f, const Derivator& g, double t, double tol) {
    GDerivReport rep = g_derivative(f, g, t, tol);
    if (!rep.ok()) fail(ErrorCode::DerivativeMissing, "no g-derivative at t=" + fmt(t));
    return *rep.value;
}

std::vector<std::pair<double, GDerivReport>> derivative_grid(const PiecewiseMap& f,
                                                             const Derivator& g,
                                                             const std::vector<double>& grid,
                                                             double tol) {
    std::vector<std::pair<double, GDerivReport>> out;
    out.reserve(grid.size());
    for (double t : grid) out.emplace_back(t, g_derivative(f, g, t, tol));
    return out;
}

PiecewiseMap g_derivative_fn(const PiecewiseMap& f, const Derivator& g, double tol) {
    std::vector<double> bps = f.breakpoints();
    bps.insert(bps.end(), g.breakpoints().begin(), g.breakpoints().end());
    bps = merge_points(std::move(bps));

    auto fp = std::make_shared<const PiecewiseMap>(f);
    auto gp = std::make_shared<const Derivator>(g);
    auto lazy = [fp, gp, tol]() {
        return CustomForm{[fp, gp, tol](double x) { return g_derivative_value(*fp, *gp, x, tol); }};
    };

    std::vector<SegmentForm> segs;
    segs.reserve(bps.size() - 1);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double mid = bps[i] + 0.5 * (bps[i + 1] - bps[i]);
        const SegmentForm& fs = f.segments()[f.segment_index(mid)];
        const SegmentForm& gs = g.segments()[g.segment_index(mid)];
        if (is_constant_form(gs)) {
            // Constant on the whole span: the derivative at every interior
            // point is the right-quotient at the component endpoint.
            segs.push_back(ConstantForm{g_derivative_value(f, g, mid, tol)});
        } else if (const auto* ga = std::get_if<AffineForm>(&gs); ga && ga->slope > 0.0) {
            if (std::holds_alternative<ConstantForm>(fs)) {
                segs.push_back(ConstantForm{0.0});
            } else if (const auto* fa = std::get_if<AffineForm>(&fs)) {
                segs.push_back(ConstantForm{fa->slope / ga->slope});
            } else if (const auto* fe = std::get_if<ExpForm>(&fs)) {
                segs.push_back(ExpForm{fe->scale * fe->rate / ga->slope, fe->rate, fe->shift});
            } else {
                segs.push_back(lazy());
            }
        } else {
            segs.push_back(lazy());
        }
    }

    std::map<double, double> values;
    std::vector<double> bad;
    for (double t : bps) {
        GDerivReport rep = g_derivative(f, g, t, tol);
        if (rep.ok()) {
            values[t] = *rep.value;
        } else {
            bad.push_back(t);
        }
    }
    if (!bad.empty()) {
        std::string what = "derivative missing at";
        for (double t : bad) what += " " + fmt(t);
        fail(ErrorCode::DerivativeMissing, what);
    }
    bool lazy_segments = false;
    for (const auto& s : segs)
        if (is_custom_form(s)) lazy_segments = true;
    PiecewiseMap out = PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values));
    double noise = 4.0 * f.eval_noise();
    if (lazy_segments) noise += tol * value_scale(out);
    return out.with_eval_noise(noise);
}

double product_rule(const PiecewiseMap& f1, const PiecewiseMap& f2, const Derivator& g,
                    double t, double tol) {
    double d1 = g_derivative_value(f1, g, t, tol);
    double d2 = g_derivative_value(f2, g, t, tol);
    double ts = g.classify(t).t_star;
    double dgs = g.delta(ts);
    return d1 * f2.eval(ts) + d2 * f1.eval(ts) + d1 * d2 * dgs;
}

double quotient_rule(const PiecewiseMap& f1, const PiecewiseMap& f2, const Derivator& g,
                     double t, double tol) {
    double d1 = g_derivative_value(f1, g, t, tol);
    double d2 = g_derivative_value(f2, g, t, tol);
    double ts = g.classify(t).t_star;
    double dgs = g.delta(ts);
    double v2 = f2.eval(ts);
    double denom = v2 * (v2 + d2 * dgs);
    if (std::fabs(denom) < 1e-14 * std::max(1.0, v2 * v2))
        fail(ErrorCode::DenominatorVanishes, "quotient rule at t=" + fmt(t));
    return (d1 * v2 - d2 * f1.eval(ts)) / denom;
}

PiecewiseMap compose(const RealFunction& h, const PiecewiseMap& f) {
    std::vector<SegmentForm> segs;
    segs.reserve(f.segments().size());
    for (const auto& s : f.segments()) {
        auto hv = h.value;
        segs.push_back(CustomForm{[hv, s](double x) { return hv(eval_form(s, x)); }});
    }
    std::map<double, double> values, rights;
    for (size_t i = 0; i < f.breakpoints().size(); ++i)
        values[f.breakpoints()[i]] = h.value(f.point_values()[i]);
    for (size_t i = 0; i + 1 < f.breakpoints().size(); ++i) {
        double t = f.breakpoints()[i];
        rights[t] = h.value(f.right_limit(t));
    }
    return PiecewiseMap::build(f.breakpoints(), std::move(segs), std::move(values),
                               std::move(rights));
}

namespace {

// Local constancy of f to the right of t, read from the representation.
// Returns empty when a black-box segment makes the question undecidable.
std::optional<bool> locally_constant_right(const PiecewiseMap& f, double t) {
    size_t idx = 0;
    const auto& bps = f.breakpoints();
    auto it = std::lower_bound(bps.begin(), bps.end(), t);
    if (it != bps.end() && *it == t) {
        idx = static_cast<size_t>(it - bps.begin());
        if (idx + 1 >= bps.size()) return false;
    } else {
        idx = f.segment_index(t);
        const SegmentForm& s = f.segments()[idx];
        if (is_custom_form(s)) return std::nullopt;
        return is_constant_form(s);
    }
    const SegmentForm& s = f.segments()[idx];
    if (is_custom_form(s)) return std::nullopt;
    if (!is_constant_form(s)) return false;
    return f.right_limit(t) == f.eval(t) &&
           std::get<ConstantForm>(s).level == f.eval(t);
}

}  // namespace

bool chain_rule_check(const RealFunction& h, const PiecewiseMap& f, const Derivator& g,
                      double t, double tol) {
    PiecewiseMap hf = compose(h, f);
    double numeric = g_derivative_value(hf, g, t, tol);

    PointClassification pc = g.classify(t);
    double formula = 0.0;
    switch (pc.cls) {
        case PointClass::Regular:
        case PointClass::NgMinus:
        case PointClass::NgPlus:
            formula = h.deriv(f.eval(t)) * g_derivative_value(f, g, t, tol);
            break;
        case PointClass::ConstancyInterior:
            formula = h.deriv(f.eval(pc.t_star)) * g_derivative_value(f, g, t, tol);
            break;
        case PointClass::Jump: {
            auto lc = locally_constant_right(f, t);
            if (!lc.has_value())
                fail(ErrorCode::CaseUndetermined,
                     "cannot read local constancy from the representation at t=" + fmt(t));
            if (*lc) {
                formula = 0.0;  // both f'_g and (h o f)'_g vanish
            } else {
                double fp = f.right_limit(t);
                double fv = f.eval(t);
                double dfg = g_derivative_value(f, g, t, tol);
                double factor = (std::fabs(fp - fv) <= 1e-14 * std::max(1.0, std::fabs(fv)))
                                    ? h.deriv(fv)
                                    : (h.value(fp) - h.value(fv)) / (fp - fv);
                formula = factor * dfg;
            }
            break;
        }
    }
    double scale = std::max({1.0, std::fabs(formula), std::fabs(numeric)});
    return std::fabs(formula - numeric) <= tol * scale;
}

}  // namespace stieltjes
