#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stieltjes/segment.hpp"

namespace stieltjes {

// Specification of g on one span (lo, hi]; lo/hi must be consecutive
// breakpoints of the enclosing derivator.
struct SegmentSpec {
    double lo = 0.0;
    double hi = 0.0;
    SegmentForm form;
};

enum class PointClass { Regular, Jump, ConstancyInterior, NgMinus, NgPlus };

const char* point_class_name(PointClass c);

struct PointClassification {
    PointClass cls = PointClass::Regular;
    double t_star = 0.0;
    double delta_g = 0.0;
};

// Open component (lo, hi) of the constancy set C_g.
struct ConstancyComponent {
    double lo = 0.0;
    double hi = 0.0;
    double level = 0.0;
};

struct ClosureConditions {
    bool ng_accum_ok = true;  // N_g' \ N_g subset of D_g
    bool dg_accum_ok = true;  // D_g' subset of D_g
};

// Analytic object a finite representation stands in for. Finite jump and
// plateau structures always satisfy both closure conditions; the flag lets a
// truncated derivator report its limit's answer instead.
enum class DeclaredLimit { None, CantorFunction, JumpAccumulation };

// A left-continuous non-decreasing driver g on [a,b], stored as breakpoints,
// one segment per consecutive pair, and a jump mass per discontinuity point.
// The exceptional sets D_g, C_g, N_g+- are read off the representation at
// build time; no numeric detection is ever attempted.
class Derivator {
public:
    static Derivator build(double a, double b,
                           std::vector<double> breakpoints,
                           std::vector<SegmentForm> segments,
                           std::map<double, double> jumps,
                           DeclaredLimit declared_limit = DeclaredLimit::None,
                           std::optional<int> truncation_depth = std::nullopt);

    double domain_lo() const { return breakpoints_.front(); }
    double domain_hi() const { return breakpoints_.back(); }

    double eval(double t) const;
    double right_limit(double t) const;
    double delta(double t) const;
    PointClassification classify(double t) const;
    ClosureConditions closure_conditions() const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<SegmentForm>& segments() const { return segments_; }
    const std::map<double, double>& jumps() const { return jumps_; }
    const std::vector<ConstancyComponent>& constancy_components() const { return constancy_; }
    const std::vector<double>& ng_minus() const { return ng_minus_; }
    const std::vector<double>& ng_plus() const { return ng_plus_; }

    DeclaredLimit declared_limit() const { return declared_limit_; }
    std::optional<int> truncation_depth() const { return truncation_depth_; }
    // Sup-norm bound between this finite object and its declared limit
    // (2^-depth for Cantor, 2^(1-depth) jump tail mass for the accumulation
    // witness); zero when the object is not a stand-in.
    double tail_bound() const;

    bool contains(double t) const { return t >= domain_lo() && t <= domain_hi(); }
    // Index of the segment whose half-open span (b_i, b_{i+1}] covers t; for
    // t == a that is segment 0.
    size_t segment_index(double t) const;
    // Distance from t to the nearest breakpoint strictly beyond it on the
    // given side; 0 when t is the endpoint itself.
    double gap_to_next_breakpoint(double t, bool right) const;

private:
    Derivator() = default;

    std::vector<double> breakpoints_;
    std::vector<SegmentForm> segments_;
    std::map<double, double> jumps_;
    std::vector<ConstancyComponent> constancy_;
    std::vector<double> ng_minus_;
    std::vector<double> ng_plus_;
    DeclaredLimit declared_limit_ = DeclaredLimit::None;
    std::optional<int> truncation_depth_;
};

// Convenience constructors used across tests and the CLI.
Derivator identity_derivator(double a, double b);

// g(x) = x on [0,1], 1 on (1,2), x-1 on [2,3]: C_g=(1,2), Ng-={1}, Ng+={2}.
Derivator gderexample_derivator();

// g(t) = t (+d1 past 1)(+d2 past 2) on [0,T]: D_g={1,2}.
Derivator example1_derivator(double delta1, double delta2, double T = 3.0);

}  // namespace stieltjes
