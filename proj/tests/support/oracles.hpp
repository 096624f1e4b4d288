#pragma once

// Test-only brute-force oracles. They deliberately avoid the library's
// estimation machinery so the checks stay two-route.

#include <cmath>
#include <functional>
#include <vector>

#include "stieltjes/derivator.hpp"
#include "stieltjes/intervals.hpp"
#include "stieltjes/piecewise.hpp"

namespace oracles {

using stieltjes::Derivator;
using stieltjes::IntervalMember;
using stieltjes::PiecewiseMap;
using stieltjes::PointClass;

// Difference-quotient oracle: fixed halving schedule, two Richardson levels,
// no early stopping. At jumps the exact algebraic quotient is used.
inline double quotient_oracle(const std::function<double(double)>& value,
                              const std::function<double(double)>& right_limit,
                              const Derivator& g, double t) {
    double dg = g.delta(t);
    if (dg > 0.0) return (right_limit(t) - value(t)) / dg;

    auto one_side = [&](bool right) {
        double edge = right ? g.domain_hi() - t : t - g.domain_lo();
        double h0 = std::min(1e-3, 0.25 * edge);
        std::vector<double> qs;
        for (int k = 0; k < 3; ++k) {
            double h = h0 * std::pow(0.5, k);
            double s = right ? t + h : t - h;
            qs.push_back((value(s) - value(t)) / (g.eval(s) - g.eval(t)));
        }
        double r1 = 2.0 * qs[1] - qs[0];
        double r2 = 2.0 * qs[2] - qs[1];
        return (4.0 * r2 - r1) / 3.0;
    };

    auto pc = g.classify(t);
    if (pc.cls == PointClass::ConstancyInterior) {
        // right quotient at the component end
        double b_n = pc.t_star;
        double edge = g.domain_hi() - b_n;
        double h0 = std::min(1e-3, 0.25 * edge);
        std::vector<double> qs;
        for (int k = 0; k < 3; ++k) {
            double h = h0 * std::pow(0.5, k);
            double s = b_n + h;
            qs.push_back((value(s) - value(b_n)) / (g.eval(s) - g.eval(b_n)));
        }
        double r1 = 2.0 * qs[1] - qs[0];
        double r2 = 2.0 * qs[2] - qs[1];
        return (4.0 * r2 - r1) / 3.0;
    }
    if (pc.cls == PointClass::NgMinus) return one_side(false);
    if (pc.cls == PointClass::NgPlus) return one_side(true);
    if (t == g.domain_lo()) return one_side(true);
    if (t == g.domain_hi()) return one_side(false);
    return 0.5 * (one_side(false) + one_side(true));
}

inline double quotient_oracle(const PiecewiseMap& f, const Derivator& g, double t) {
    return quotient_oracle([&f](double x) { return f.eval(x); },
                           [&f](double x) { return f.right_limit(x); }, g, t);
}

// Grid-run family oracle: classify a dense grid plus all breakpoints, keep
// the allowed classes, and read member endpoints and openness off the runs.
inline std::vector<IntervalMember> family_oracle(const Derivator& g, bool refine_i2,
                                                 int grid_n = 10000) {
    auto pts = stieltjes::uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);
    pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
    pts = stieltjes::merge_points(std::move(pts));

    auto kept = [&](double t) {
        PointClass c = g.classify(t).cls;
        if (c == PointClass::ConstancyInterior) return false;
        if (refine_i2 && (c == PointClass::Jump || c == PointClass::NgPlus)) return false;
        return true;
    };
    auto removed_point = [&](double t) {
        PointClass c = g.classify(t).cls;
        return refine_i2 && (c == PointClass::Jump || c == PointClass::NgPlus);
    };

    std::vector<IntervalMember> members;
    size_t i = 0;
    while (i < pts.size()) {
        if (!kept(pts[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < pts.size() && kept(pts[j + 1])) ++j;
        IntervalMember m;
        if (i > 0 && removed_point(pts[i - 1])) {
            m.lo = pts[i - 1];
            m.lo_closed = false;
        } else {
            m.lo = pts[i];
            m.lo_closed = true;
        }
        if (j + 1 < pts.size() && removed_point(pts[j + 1])) {
            m.hi = pts[j + 1];
            m.hi_closed = false;
        } else {
            m.hi = pts[j];
            m.hi_closed = true;
        }
        members.push_back(m);
        i = j + 1;
    }
    return members;
}

}  // namespace oracles
