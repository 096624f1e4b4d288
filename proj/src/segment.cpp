#include "stieltjes/segment.hpp"

namespace stieltjes {

namespace {

CustomForm make_custom(std::function<double(double)> fn) {
    CustomForm c;
    c.fn = std::move(fn);
    return c;
}

}  // namespace

SegmentForm add_forms(const SegmentForm& lhs, const SegmentForm& rhs) {
    if (const auto* lc = std::get_if<ConstantForm>(&lhs)) {
        if (const auto* rc = std::get_if<ConstantForm>(&rhs)) return ConstantForm{lc->level + rc->level};
        return offset_form(rhs, lc->level);
    }
    if (std::holds_alternative<ConstantForm>(rhs)) return add_forms(rhs, lhs);
    if (const auto* la = std::get_if<AffineForm>(&lhs)) {
        if (const auto* ra = std::get_if<AffineForm>(&rhs))
            return AffineForm{la->slope + ra->slope, la->intercept + ra->intercept};
    }
    return make_custom([lhs, rhs](double x) { return eval_form(lhs, x) + eval_form(rhs, x); });
}

SegmentForm scale_form(double c, const SegmentForm& form) {
    if (const auto* k = std::get_if<ConstantForm>(&form)) return ConstantForm{c * k->level};
    if (const auto* a = std::get_if<AffineForm>(&form)) return AffineForm{c * a->slope, c * a->intercept};
    if (const auto* e = std::get_if<ExpForm>(&form)) return ExpForm{c * e->scale, e->rate, e->shift};
    return make_custom([c, form](double x) { return c * eval_form(form, x); });
}

SegmentForm offset_form(const SegmentForm& form, double c) {
    if (const auto* k = std::get_if<ConstantForm>(&form)) return ConstantForm{k->level + c};
    if (const auto* a = std::get_if<AffineForm>(&form)) return AffineForm{a->slope, a->intercept + c};
    return make_custom([c, form](double x) { return eval_form(form, x) + c; });
}

SegmentForm multiply_forms(const SegmentForm& lhs, const SegmentForm& rhs) {
    if (const auto* lc = std::get_if<ConstantForm>(&lhs)) return scale_form(lc->level, rhs);
    if (const auto* rc = std::get_if<ConstantForm>(&rhs)) return scale_form(rc->level, lhs);
    if (const auto* le = std::get_if<ExpForm>(&lhs)) {
        if (const auto* re = std::get_if<ExpForm>(&rhs)) {
            // s1 s2 e^{r1(x-b1)} e^{r2(x-b2)} with the common shift kept at b1.
            double scale = le->scale * re->scale * std::exp(re->rate * (le->shift - re->shift));
            return ExpForm{scale, le->rate + re->rate, le->shift};
        }
    }
    return make_custom([lhs, rhs](double x) { return eval_form(lhs, x) * eval_form(rhs, x); });
}

SegmentForm divide_forms(const SegmentForm& lhs, const SegmentForm& rhs) {
    if (const auto* rc = std::get_if<ConstantForm>(&rhs)) {
        if (rc->level == 0.0) fail(ErrorCode::ZeroDenominator, "division by zero segment");
        return scale_form(1.0 / rc->level, lhs);
    }
    if (const auto* le = std::get_if<ExpForm>(&lhs)) {
        if (const auto* re = std::get_if<ExpForm>(&rhs)) {
            if (re->scale == 0.0) fail(ErrorCode::ZeroDenominator, "division by zero segment");
            double scale = le->scale / re->scale * std::exp(re->rate * (re->shift - le->shift));
            return ExpForm{scale, le->rate - re->rate, le->shift};
        }
    }
    return make_custom([lhs, rhs](double x) {
        double d = eval_form(rhs, x);
        if (d == 0.0) fail(ErrorCode::ZeroDenominator, "division by zero value");
        return eval_form(lhs, x) / d;
    });
}

}  // namespace stieltjes
