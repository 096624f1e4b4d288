#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stieltjes/derivator.hpp"

namespace stieltjes {

// Candidate function f on [a,b]. Unlike a derivator it need not be monotone
// or one-sided continuous: the value at every breakpoint is explicit data,
// and the right limit at a breakpoint may be overridden independently of the
// neighbouring segments (the paper's solutions are discontinuous from both
// sides at jumps of g).
class PiecewiseMap {
public:
    static PiecewiseMap build(std::vector<double> breakpoints,
                              std::vector<SegmentForm> segments,
                              std::map<double, double> point_values = {},
                              std::map<double, double> right_limit_overrides = {});

    static PiecewiseMap constant(double a, double b, double value);

    double domain_lo() const { return breakpoints_.front(); }
    double domain_hi() const { return breakpoints_.back(); }
    bool contains(double t) const { return t >= domain_lo() && t <= domain_hi(); }

    double eval(double t) const;
    double left_limit(double t) const;   // t in (a,b]
    double right_limit(double t) const;  // t in [a,b)

    // Absolute bound on the rounding/quadrature noise of eval(). Zero for
    // exact closed-form data; builders that integrate or differentiate
    // numerically propagate their error here so difference quotients know
    // when a tiny value difference is indistinguishable from zero.
    double eval_noise() const { return eval_noise_; }
    PiecewiseMap with_eval_noise(double noise) const {
        PiecewiseMap copy = *this;
        copy.eval_noise_ = std::max(copy.eval_noise_, noise);
        return copy;
    }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<SegmentForm>& segments() const { return segments_; }
    const std::vector<double>& point_values() const { return point_values_; }
    const std::map<double, double>& right_limit_overrides() const { return right_overrides_; }

    size_t segment_index(double t) const;
    double gap_to_next_breakpoint(double t, bool right) const;
    bool is_breakpoint(double t) const;

private:
    PiecewiseMap() = default;

    std::vector<double> breakpoints_;
    std::vector<SegmentForm> segments_;
    std::vector<double> point_values_;  // one per breakpoint
    std::map<double, double> right_overrides_;
    double eval_noise_ = 0.0;
};

// max(1, max |point value|): crude magnitude used for noise propagation.
double value_scale(const PiecewiseMap& f);

// f(t*) with t* taken from classify(g, t).
double star_eval(const PiecewiseMap& f, const Derivator& g, double t);

// Pointwise algebra; breakpoints are merged and one-sided data combined
// exactly. Domains must agree.
PiecewiseMap add(const PiecewiseMap& f1, const PiecewiseMap& f2);
PiecewiseMap scale(double c, const PiecewiseMap& f);
PiecewiseMap offset(const PiecewiseMap& f, double c);
PiecewiseMap multiply(const PiecewiseMap& f1, const PiecewiseMap& f2);
PiecewiseMap divide(const PiecewiseMap& f1, const PiecewiseMap& f2);

// View of a derivator as a candidate function (used for f = g checks).
PiecewiseMap as_piecewise(const Derivator& g);

// Sampled sup norm: grid plus breakpoints plus both one-sided values.
double sup_norm(const PiecewiseMap& f, int grid_n = Defaults::grid_n);

enum class Side { Both, Left, Right };

// Sampled semi-decision for Definition-3.1 continuity through g, on the
// requested side(s). Offsets shrink geometrically from the domain edge down
// to resolution; |f(t+-h) - f(t)| must vanish whenever |g(t+-h) - g(t)|
// does. Points with exactly equal g-value (plateaus) force equality of f up
// to tol. At constancy-interior points the filter can exclude nothing, so
// the check reports true there; see bd_membership, which never consults
// interior points.
bool is_g_continuous_at(const PiecewiseMap& f, const Derivator& g, double t,
                        double tol = 1e-9, Side side = Side::Both);

struct BDReport {
    bool is_bounded = false;
    bool g_continuous_off_exceptional = false;
    bool left_g_continuous_on_ng_minus = false;
    bool right_g_continuous_on_ng_plus = false;
    bool verdict = false;
};

// Membership test for the space of bounded candidates with the one-sided
// continuity pattern on the exceptional sets.
BDReport bd_membership(const PiecewiseMap& f, const Derivator& g,
                       double tol = Defaults::tol, int grid_n = 256);

}  // namespace stieltjes
