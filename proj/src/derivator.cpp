#include "stieltjes/derivator.hpp"

#include <algorithm>
#include <sstream>

namespace stieltjes {

namespace {

constexpr int kCustomValidationSamples = 1024;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

const char* point_class_name(PointClass c) {
    switch (c) {
        case PointClass::Regular: return "Regular";
        case PointClass::Jump: return "Jump";
        case PointClass::ConstancyInterior: return "ConstancyInterior";
        case PointClass::NgMinus: return "NgMinus";
        case PointClass::NgPlus: return "NgPlus";
    }
    return "?";
}

Derivator Derivator::build(double a, double b,
                           std::vector<double> breakpoints,
                           std::vector<SegmentForm> segments,
                           std::map<double, double> jumps,
                           DeclaredLimit declared_limit,
                           std::optional<int> truncation_depth) {
    if (!(a < b)) fail(ErrorCode::BadInput, "domain must satisfy a < b");
    if (breakpoints.size() < 2 || breakpoints.front() != a || breakpoints.back() != b)
        fail(ErrorCode::BadInput, "breakpoints must start at a and end at b");
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            fail(ErrorCode::BadInput, "breakpoints must be strictly increasing");
    if (segments.size() + 1 != breakpoints.size())
        fail(ErrorCode::BadInput, "need exactly one segment per breakpoint pair");

    for (const auto& [t, dg] : jumps) {
        if (dg <= 0.0) fail(ErrorCode::BadInput, "jump mass must be positive at t=" + fmt(t));
        if (!std::binary_search(breakpoints.begin(), breakpoints.end(), t))
            fail(ErrorCode::BadInput, "jump location " + fmt(t) + " is not a breakpoint");
        if (t == b) fail(ErrorCode::EndpointHypothesisViolation, "b is a jump point");
    }

    // Per-segment monotonicity. Affine needs slope >= 0; black boxes are
    // sampled, which is the best a representation-level check can do.
    for (size_t i = 0; i < segments.size(); ++i) {
        double lo = breakpoints[i], hi = breakpoints[i + 1];
        if (const auto* aff = std::get_if<AffineForm>(&segments[i])) {
            if (aff->slope < 0.0)
                fail(ErrorCode::MonotonicityViolation, "affine slope < 0 on segment " + fmt(lo));
        } else if (const auto* ex = std::get_if<ExpForm>(&segments[i])) {
            if (ex->scale * ex->rate < 0.0)
                fail(ErrorCode::MonotonicityViolation, "decreasing exp segment at " + fmt(lo));
        } else if (is_custom_form(segments[i])) {
            double prev = eval_form(segments[i], lo);
            if (!std::isfinite(prev)) fail(ErrorCode::BadInput, "segment not finite at " + fmt(lo));
            for (int k = 1; k <= kCustomValidationSamples; ++k) {
                double x = lo + (hi - lo) * (static_cast<double>(k) / kCustomValidationSamples);
                double v = eval_form(segments[i], x);
                if (!std::isfinite(v)) fail(ErrorCode::BadInput, "segment not finite at " + fmt(x));
                if (v < prev) fail(ErrorCode::MonotonicityViolation,
                                   "sampled decrease in custom segment at " + fmt(x));
                prev = v;
            }
        }
    }

    // Cross-breakpoint consistency: the next segment must start exactly at
    // the left value plus the jump mass; this is left-continuity plus global
    // monotonicity in one equation.
    for (size_t i = 1; i < breakpoints.size(); ++i) {
        double t = breakpoints[i];
        double left = eval_form(segments[i - 1], t);
        auto it = jumps.find(t);
        double jump = (it == jumps.end()) ? 0.0 : it->second;
        if (i < segments.size() + 1 && i < breakpoints.size() - 1) {
            double right_start = eval_form(segments[i], t);
            double expected = left + jump;
            double scale = std::max({1.0, std::fabs(left), std::fabs(right_start)});
            if (std::fabs(right_start - expected) > 1e-12 * scale) {
                if (right_start < expected)
                    fail(ErrorCode::MonotonicityViolation,
                         "value drop across breakpoint " + fmt(t));
                fail(ErrorCode::LeftContinuityViolation,
                     "segment start at " + fmt(t) + " does not meet left value plus jump");
            }
        }
    }

    Derivator g;
    g.breakpoints_ = std::move(breakpoints);
    g.segments_ = std::move(segments);
    g.jumps_ = std::move(jumps);
    g.declared_limit_ = declared_limit;
    g.truncation_depth_ = truncation_depth;

    // Constancy components: maximal runs of Constant segments. Adjacent
    // constant segments can only be distinct components across a jump.
    size_t i = 0;
    while (i < g.segments_.size()) {
        if (!is_constant_form(g.segments_[i])) { ++i; continue; }
        size_t j = i;
        while (j + 1 < g.segments_.size() && is_constant_form(g.segments_[j + 1]) &&
               g.jumps_.find(g.breakpoints_[j + 1]) == g.jumps_.end())
            ++j;
        ConstancyComponent comp;
        comp.lo = g.breakpoints_[i];
        comp.hi = g.breakpoints_[j + 1];
        comp.level = std::get<ConstantForm>(g.segments_[i]).level;
        g.constancy_.push_back(comp);
        i = j + 1;
    }

    for (const auto& comp : g.constancy_) {
        if (g.jumps_.find(comp.lo) == g.jumps_.end()) g.ng_minus_.push_back(comp.lo);
        if (g.jumps_.find(comp.hi) == g.jumps_.end()) g.ng_plus_.push_back(comp.hi);
    }

    // Standing hypothesis: a not in N_g-, b not in N_g+ u D_g u C_g.
    double a0 = g.breakpoints_.front(), b0 = g.breakpoints_.back();
    for (double t : g.ng_minus_)
        if (t == a0) fail(ErrorCode::EndpointHypothesisViolation, "a in N_g-");
    if (!g.constancy_.empty() && g.constancy_.back().hi == b0)
        fail(ErrorCode::EndpointHypothesisViolation, "b touches C_g");

    return g;
}

size_t Derivator::segment_index(double t) const {
    if (!contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    if (t == domain_lo()) return 0;
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    size_t idx = static_cast<size_t>(it - breakpoints_.begin());
    if (*it == t) return idx - 1;  // breakpoint belongs to the segment on its left
    return idx - 1;
}

double Derivator::eval(double t) const {
    size_t i = segment_index(t);
    double v = eval_form(segments_[i], t);
    if (t == domain_lo()) {
        // The first segment describes (a, b_1]; a jump at a sits between the
        // stored value g(a) and the segment start.
        auto it = jumps_.find(t);
        if (it != jumps_.end()) return v - it->second;
    }
    return v;
}

double Derivator::delta(double t) const {
    if (!contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    auto it = jumps_.find(t);
    return it == jumps_.end() ? 0.0 : it->second;
}

double Derivator::right_limit(double t) const {
    if (!contains(t) || t == domain_hi()) fail(ErrorCode::OutOfDomain, "right limit at t=" + fmt(t));
    return eval(t) + delta(t);
}

PointClassification Derivator::classify(double t) const {
    if (!contains(t)) fail(ErrorCode::OutOfDomain, "t=" + fmt(t));
    PointClassification pc;
    pc.delta_g = delta(t);
    if (pc.delta_g > 0.0) {
        pc.cls = PointClass::Jump;
        pc.t_star = t;
        return pc;
    }
    for (const auto& comp : constancy_) {
        if (t > comp.lo && t < comp.hi) {
            pc.cls = PointClass::ConstancyInterior;
            pc.t_star = comp.hi;
            return pc;
        }
        if (t == comp.lo) {
            pc.cls = PointClass::NgMinus;
            pc.t_star = t;
            return pc;
        }
        if (t == comp.hi) {
            pc.cls = PointClass::NgPlus;
            pc.t_star = t;
            return pc;
        }
    }
    pc.cls = PointClass::Regular;
    pc.t_star = t;
    return pc;
}

ClosureConditions Derivator::closure_conditions() const {
    switch (declared_limit_) {
        case DeclaredLimit::CantorFunction:
            // N_g of the Cantor function accumulates on the whole Cantor set,
            // which contains no jump; D_g stays empty and closed.
            return {false, true};
        case DeclaredLimit::JumpAccumulation:
            // Jumps at +-1/n accumulate at 0, which carries no jump mass.
            return {true, false};
        case DeclaredLimit::None:
            return {true, true};
    }
    return {true, true};
}

double Derivator::tail_bound() const {
    if (!truncation_depth_) return 0.0;
    switch (declared_limit_) {
        case DeclaredLimit::CantorFunction:
            return std::pow(2.0, -*truncation_depth_);
        case DeclaredLimit::JumpAccumulation:
            return std::pow(2.0, 1 - *truncation_depth_);
        case DeclaredLimit::None:
            return 0.0;
    }
    return 0.0;
}

double Derivator::gap_to_next_breakpoint(double t, bool right) const {
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

Derivator identity_derivator(double a, double b) {
    return Derivator::build(a, b, {a, b}, {AffineForm{1.0, 0.0}}, {});
}

Derivator gderexample_derivator() {
    return Derivator::build(0.0, 3.0, {0.0, 1.0, 2.0, 3.0},
                            {AffineForm{1.0, 0.0}, ConstantForm{1.0}, AffineForm{1.0, -1.0}}, {});
}

Derivator example1_derivator(double delta1, double delta2, double T) {
    if (T <= 2.0) fail(ErrorCode::BadInput, "example needs T > 2");
    return Derivator::build(0.0, T, {0.0, 1.0, 2.0, T},
                            {AffineForm{1.0, 0.0}, AffineForm{1.0, delta1},
                             AffineForm{1.0, delta1 + delta2}},
                            {{1.0, delta1}, {2.0, delta2}});
}

}  // namespace stieltjes
