#include "stieltjes/cantor.hpp"

#include <algorithm>

namespace stieltjes {

std::int64_t Triadic::pow3_value(int k) {
    std::int64_t v = 1;
    for (int i = 0; i < k; ++i) v *= 3;
    return v;
}

double Triadic::to_double() const {
    return static_cast<double>(num) / static_cast<double>(pow3_value(pow3));
}

namespace {

// Common scale for two triadic rationals.
void align(Triadic& a, Triadic& b) {
    while (a.pow3 < b.pow3) { a.num *= 3; ++a.pow3; }
    while (b.pow3 < a.pow3) { b.num *= 3; ++b.pow3; }
}

}  // namespace

double cantor_g(double x, int depth) {
    if (x < 0.0 || x > 1.0) fail(ErrorCode::OutOfDomain, "cantor argument outside [0,1]");
    // Triadic rationals classify exactly through the integer path; iterating
    // the float map instead would drift across plateau boundaries.
    int snap_depth = std::min(std::max(depth, 1), 18);
    double den = static_cast<double>(Triadic::pow3_value(snap_depth));
    double scaled = x * den;
    double rounded = std::nearbyint(scaled);
    if (std::fabs(scaled - rounded) <= 1e-6 && rounded >= 0.0 && rounded <= den) {
        return cantor_g(Triadic{static_cast<std::int64_t>(rounded), snap_depth}, depth);
    }
    double value = 0.0;
    double scale = 1.0;
    for (int k = 0; k < depth; ++k) {
        scale *= 0.5;
        if (x < 1.0 / 3.0) {
            x *= 3.0;
        } else if (x < 2.0 / 3.0) {
            return value + scale;
        } else {
            value += scale;
            x = 3.0 * x - 2.0;
        }
    }
    return value + scale * 1.0;  // seed F_0 == 1
}

double cantor_g(Triadic x, int depth) {
    std::int64_t den = Triadic::pow3_value(x.pow3);
    if (x.num < 0 || x.num > den) fail(ErrorCode::OutOfDomain, "cantor argument outside [0,1]");
    double value = 0.0;
    double scale = 1.0;
    std::int64_t num = x.num;
    for (int k = 0; k < depth; ++k) {
        scale *= 0.5;
        if (3 * num < den) {
            num *= 3;
        } else if (3 * num < 2 * den) {
            return value + scale;
        } else {
            value += scale;
            num = 3 * num - 2 * den;
        }
    }
    return value + scale;
}

CantorMembership cantor_membership(std::int64_t num, std::int64_t den, int depth) {
    if (den <= 0 || num < 0 || num > den) fail(ErrorCode::OutOfDomain, "argument outside [0,1]");
    CantorMembership m{true, true};
    std::int64_t nc = num, nh = num;
    bool c_alive = true, h_alive = true;
    for (int k = 0; k < depth; ++k) {
        if (c_alive) {
            if (3 * nc <= den) {
                nc *= 3;
            } else if (3 * nc >= 2 * den) {
                nc = 3 * nc - 2 * den;
            } else {
                m.in_c = false;
                c_alive = false;
            }
        }
        if (h_alive) {
            // Half-open pieces: [0,1/3] kept closed, (2/3,1] open on the left.
            if (3 * nh <= den) {
                nh *= 3;
            } else if (3 * nh > 2 * den) {
                nh = 3 * nh - 2 * den;
            } else {
                m.in_c_hat = false;
                h_alive = false;
            }
        }
        if (!c_alive && !h_alive) break;
    }
    return m;
}

CantorMembership cantor_membership(const Triadic& x, int depth) {
    return cantor_membership(x.num, Triadic::pow3_value(x.pow3), depth);
}

std::vector<CantorPlateau> cantor_plateaus(int n) {
    if (n < 1) fail(ErrorCode::BadInput, "need n >= 1");
    // F_1: value 1/2 on [0, 2/3), value 1 on [2/3, 1].
    std::vector<CantorPlateau> cur = {
        {Triadic{0, 1}, Triadic{2, 1}, 0.5},
        {Triadic{2, 1}, Triadic{3, 1}, 1.0},
    };
    for (int k = 2; k <= n; ++k) {
        std::vector<CantorPlateau> next;
        next.reserve(cur.size() * 2);
        // Left branch: plateaus of F_{k-1} scaled into [0,1/3) at half value;
        // the final one (value 1) extends across the middle third to 2/3.
        for (const auto& p : cur) {
            CantorPlateau q;
            q.lo = Triadic{p.lo.num, p.lo.pow3 + 1};
            q.hi = Triadic{p.hi.num, p.hi.pow3 + 1};
            q.value = 0.5 * p.value;
            next.push_back(q);
        }
        next.back().hi = Triadic{2, 1};
        // Right branch: scaled into [2/3, 1] shifted up by 1/2.
        for (const auto& p : cur) {
            CantorPlateau q;
            Triadic lo{p.lo.num, p.lo.pow3 + 1}, hi{p.hi.num, p.hi.pow3 + 1};
            Triadic shift{2, 1};
            Triadic slo = lo, shl = shift;
            align(slo, shl);
            q.lo = Triadic{slo.num + shl.num, slo.pow3};
            Triadic shi = hi, shr = shift;
            align(shi, shr);
            q.hi = Triadic{shi.num + shr.num, shi.pow3};
            q.value = 0.5 + 0.5 * p.value;
            next.push_back(q);
        }
        cur = std::move(next);
    }
    return cur;
}

PiecewiseMap cantor_iterate_fn(int n) {
    if (n == 0) return PiecewiseMap::constant(0.0, 1.0, 1.0);
    auto plateaus = cantor_plateaus(n);
    std::vector<double> bps;
    std::vector<SegmentForm> segs;
    std::map<double, double> values;
    bps.push_back(0.0);
    for (const auto& p : plateaus) {
        values[p.lo.to_double()] = p.value;
        bps.push_back(p.hi.to_double());
        segs.push_back(ConstantForm{p.value});
    }
    values[1.0] = plateaus.back().value;
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values));
}

Derivator cantor_derivator(int depth) {
    if (depth < 1) fail(ErrorCode::BadInput, "need depth >= 1");
    if (depth > 18) fail(ErrorCode::BadInput, "depth too large for exact triadic arithmetic");
    // Kept intervals of E_depth, as triadic pairs (lo, hi) over 3^depth.
    std::vector<std::pair<std::int64_t, std::int64_t>> kept = {{0, 1}};
    for (int k = 1; k <= depth; ++k) {
        std::vector<std::pair<std::int64_t, std::int64_t>> next;
        next.reserve(kept.size() * 2);
        for (auto [lo, hi] : kept) {
            next.push_back({3 * lo, 3 * lo + 1});
            next.push_back({3 * hi - 1, 3 * hi});
        }
        std::sort(next.begin(), next.end());
        kept = std::move(next);
    }
    const double den = static_cast<double>(Triadic::pow3_value(depth));
    const double rise = std::pow(2.0, -depth);
    const double slope = std::pow(1.5, depth);

    std::vector<double> bps;
    std::vector<SegmentForm> segs;
    bps.push_back(0.0);
    double level = 0.0;
    for (size_t i = 0; i < kept.size(); ++i) {
        double lo = static_cast<double>(kept[i].first) / den;
        double hi = static_cast<double>(kept[i].second) / den;
        // Riser anchored at its plateau level to keep endpoint values tight.
        segs.push_back(AffineForm{slope, level - slope * lo});
        bps.push_back(hi);
        level += rise;
        if (i + 1 < kept.size()) {
            double next_lo = static_cast<double>(kept[i + 1].first) / den;
            segs.push_back(ConstantForm{level});
            bps.push_back(next_lo);
        }
    }
    return Derivator::build(0.0, 1.0, std::move(bps), std::move(segs), {},
                            DeclaredLimit::CantorFunction, depth);
}

std::vector<double> triadic_grid(int m) {
    std::int64_t den = Triadic::pow3_value(m);
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(den) + 1);
    for (std::int64_t k = 0; k <= den; ++k)
        pts.push_back(static_cast<double>(k) / static_cast<double>(den));
    return pts;
}

}  // namespace stieltjes
