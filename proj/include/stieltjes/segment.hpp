#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "stieltjes/common.hpp"

namespace stieltjes {

// Expression vocabulary for one piece of a piecewise object. A segment form
// describes values on the open span between two breakpoints; values AT the
// breakpoints are owned by the enclosing object.
struct AffineForm {
    double slope = 0.0;
    double intercept = 0.0;
    double operator()(double x) const { return slope * x + intercept; }
};

struct ConstantForm {
    double level = 0.0;
    double operator()(double) const { return level; }
};

// scale * exp(rate * (x - shift)); shift keeps evaluation well conditioned
// when segments are produced by the ODE solver.
struct ExpForm {
    double scale = 1.0;
    double rate = 0.0;
    double shift = 0.0;
    double operator()(double x) const { return scale * std::exp(rate * (x - shift)); }
};

// Black-box evaluator. `claims_increasing` matters only when the segment is
// used inside a derivator, where monotonicity is spot-checked at build time.
struct CustomForm {
    std::function<double(double)> fn;
    bool claims_increasing = false;
    double operator()(double x) const { return fn(x); }
};

using SegmentForm = std::variant<ConstantForm, AffineForm, ExpForm, CustomForm>;

inline double eval_form(const SegmentForm& form, double x) {
    return std::visit([x](const auto& f) { return f(x); }, form);
}

inline bool is_constant_form(const SegmentForm& form) {
    return std::holds_alternative<ConstantForm>(form);
}

inline bool is_custom_form(const SegmentForm& form) {
    return std::holds_alternative<CustomForm>(form);
}

// Exact pointwise combinators. Closed forms are kept where the algebra stays
// in the vocabulary; anything else collapses to a CustomForm.
SegmentForm add_forms(const SegmentForm& lhs, const SegmentForm& rhs);
SegmentForm scale_form(double c, const SegmentForm& form);
SegmentForm multiply_forms(const SegmentForm& lhs, const SegmentForm& rhs);
SegmentForm divide_forms(const SegmentForm& lhs, const SegmentForm& rhs);
SegmentForm offset_form(const SegmentForm& form, double c);

}  // namespace stieltjes
