#include "stieltjes/generators.hpp"

#include <algorithm>

#include "stieltjes/kernel.hpp"
#include "stieltjes/measure.hpp"

namespace stieltjes {

namespace {

std::vector<double> random_breakpoints(Rng& rng, double a, double b, int count,
                                       const std::vector<double>& avoid = {}) {
    std::uniform_real_distribution<double> dist(a + 0.05 * (b - a), b - 0.05 * (b - a));
    std::vector<double> pts = {a, b};
    int guard = 0;
    while (static_cast<int>(pts.size()) < count && guard++ < 200) {
        double t = dist(rng);
        bool close = false;
        for (double p : pts)
            if (std::fabs(p - t) < 0.04 * (b - a)) close = true;
        for (double p : avoid)
            if (std::fabs(p - t) < 0.04 * (b - a)) close = true;
        if (!close) pts.push_back(t);
    }
    return merge_points(std::move(pts));
}

std::vector<double> jump_locations(const Derivator& g) {
    std::vector<double> out;
    for (const auto& [t, dg] : g.jumps()) out.push_back(t);
    return out;
}

// Polyline through the nodes, with an optional value jump at nodes flagged
// as jump points (value = left node, right limit = right node).
PiecewiseMap polyline(const std::vector<double>& bps, const std::vector<double>& left_nodes,
                      const std::vector<double>& right_nodes) {
    std::vector<SegmentForm> segs;
    std::map<double, double> values, rights;
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double u = bps[i], v = bps[i + 1];
        double yu = right_nodes[i], yv = left_nodes[i + 1];
        double slope = (yv - yu) / (v - u);
        segs.push_back(AffineForm{slope, yu - slope * u});
        values[u] = left_nodes[i];
        rights[u] = right_nodes[i];
    }
    values[bps.back()] = left_nodes.back();
    return PiecewiseMap::build(bps, std::move(segs), std::move(values), std::move(rights));
}

}  // namespace

Derivator random_derivator(Rng& rng, const GeneratorOptions& opts) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> slope_dist(0.2, 2.5);
    std::uniform_real_distribution<double> jump_dist(0.1, 1.5);
    std::uniform_int_distribution<int> count_dist(2, std::max(2, opts.max_breakpoints - 2));

    double a = 0.0;
    double b = 1.0 + 3.0 * unit(rng);
    auto bps = random_breakpoints(rng, a, b, count_dist(rng) + 2);

    std::vector<SegmentForm> segs;
    std::map<double, double> jumps;
    double level = unit(rng);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        bool interior = i > 0 && i + 2 < bps.size();
        if (opts.allow_jumps && i > 0 && unit(rng) < 0.4) {
            double dg = jump_dist(rng);
            jumps[bps[i]] = dg;
            level += dg;
        }
        bool plateau = opts.allow_plateaus && interior && unit(rng) < 0.3 &&
                       !is_constant_form(segs.back());
        if (plateau) {
            segs.push_back(ConstantForm{level});
        } else {
            double slope = slope_dist(rng);
            segs.push_back(AffineForm{slope, level - slope * bps[i]});
            level += slope * (bps[i + 1] - bps[i]);
        }
    }
    return Derivator::build(a, b, std::move(bps), std::move(segs), std::move(jumps));
}

PiecewiseMap random_smooth_map(Rng& rng, const Derivator& g) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);

    double a = g.domain_lo(), b = g.domain_hi();
    auto bps = random_breakpoints(rng, a, b, 4, jump_locations(g));
    for (const auto& [t, dg] : g.jumps()) bps.push_back(t);
    bps = merge_points(std::move(bps));

    std::vector<SegmentForm> segs;
    std::map<double, double> values, rights;
    double level = coef(rng);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double u = bps[i], v = bps[i + 1];
        values[u] = level;
        if (g.delta(u) > 0.0 && unit(rng) < 0.6) level += coef(rng);
        rights[u] = level;
        double pick = unit(rng);
        if (pick < 0.4) {
            double s = coef(rng);
            segs.push_back(AffineForm{s, level - s * u});
            level += s * (v - u);
        } else if (pick < 0.7 && std::fabs(level) > 0.05) {
            double rate = 0.4 * coef(rng);
            segs.push_back(ExpForm{level, rate, u});
            level *= std::exp(rate * (v - u));
        } else {
            segs.push_back(ConstantForm{level});
        }
    }
    values[b] = level;
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values),
                               std::move(rights));
}

PiecewiseMap random_step_density(Rng& rng, const Derivator& g, double lo, double hi) {
    // Steps only at D_g keep the indefinite integral g-differentiable
    // everywhere (a step at a regular point would plant a kink).
    std::uniform_real_distribution<double> value_dist(lo, hi);
    std::vector<double> bps = {g.domain_lo(), g.domain_hi()};
    for (const auto& [t, dg] : g.jumps()) bps.push_back(t);
    bps = merge_points(std::move(bps));

    std::vector<SegmentForm> segs;
    std::map<double, double> values;
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double v = value_dist(rng);
        segs.push_back(ConstantForm{v});
        values[bps[i]] = v;  // right-continuous at the jump
    }
    values[bps.back()] = std::get<ConstantForm>(segs.back()).level;
    return PiecewiseMap::build(std::move(bps), std::move(segs), std::move(values));
}

std::pair<PiecewiseMap, PiecewiseMap> random_dominated_pair(Rng& rng, const Derivator& g) {
    std::uniform_real_distribution<double> psi_dist(0.3, 2.0);
    std::uniform_real_distribution<double> eta_dist(-0.95, 0.95);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto bps = random_breakpoints(rng, g.domain_lo(), g.domain_hi(), 5, jump_locations(g));
    for (const auto& [t, dg] : g.jumps()) bps.push_back(t);
    bps = merge_points(std::move(bps));

    // Nodewise damping keeps |phi| <= 0.95 psi along every chord.
    std::vector<double> psi_l(bps.size()), psi_r(bps.size());
    std::vector<double> phi_l(bps.size()), phi_r(bps.size());
    for (size_t i = 0; i < bps.size(); ++i) {
        psi_l[i] = psi_dist(rng);
        phi_l[i] = psi_l[i] * eta_dist(rng);
        if (g.delta(bps[i]) > 0.0 && unit(rng) < 0.5) {
            psi_r[i] = psi_dist(rng);
            phi_r[i] = psi_r[i] * eta_dist(rng);
        } else {
            psi_r[i] = psi_l[i];
            phi_r[i] = phi_l[i];
        }
    }
    PiecewiseMap psi = polyline(bps, psi_l, psi_r);
    PiecewiseMap phi = polyline(bps, phi_l, phi_r);
    return {indefinite(phi, g), indefinite(psi, g)};
}

PiecewiseMap random_bd1_map(Rng& rng, const Derivator& g) {
    std::uniform_real_distribution<double> value_dist(-1.5, 1.5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto bps = random_breakpoints(rng, g.domain_lo(), g.domain_hi(), 4, jump_locations(g));
    for (const auto& [t, dg] : g.jumps()) bps.push_back(t);
    bps = merge_points(std::move(bps));
    std::vector<double> left(bps.size()), right(bps.size());
    for (size_t i = 0; i < bps.size(); ++i) {
        left[i] = value_dist(rng);
        right[i] = (g.delta(bps[i]) > 0.0 && unit(rng) < 0.5) ? value_dist(rng) : left[i];
    }
    PiecewiseMap base = indefinite(polyline(bps, left, right), g);

    size_t components = g.jumps().size() + 1;
    if (!g.jumps().empty() && g.jumps().begin()->first == g.domain_lo()) components -= 1;
    std::vector<double> values;
    values.reserve(components);
    for (size_t i = 0; i < components; ++i) values.push_back(value_dist(rng));
    KernelElement k = step_kernel(g, values);
    return add(base, k.map);
}

}  // namespace stieltjes
