#include "stieltjes/metric.hpp"

#include <algorithm>

namespace stieltjes {

double chordal(double x, double y) {
    bool xi = std::isinf(x), yi = std::isinf(y);
    if (xi && yi) return 0.0;
    if (xi) return 1.0 / std::hypot(1.0, y);
    if (yi) return 1.0 / std::hypot(1.0, x);
    double hx = std::hypot(1.0, x), hy = std::hypot(1.0, y);
    // (x/hx)/hy - (y/hy)/hx stays finite even when x - y would overflow.
    return std::fabs((x / hx) / hy - (y / hy) / hx);
}

namespace {

struct QuotientPair {
    double qf = 0.0;
    double qh = 0.0;
};

std::optional<QuotientPair> quotients(const PiecewiseMap& f, const PiecewiseMap& h,
                                      const Derivator& g, double s, double t) {
    double gs = g.eval(s), gt = g.eval(t);
    if (gs == gt) return std::nullopt;
    QuotientPair q;
    q.qf = (f.eval(s) - f.eval(t)) / (gs - gt);
    q.qh = (h.eval(s) - h.eval(t)) / (gs - gt);
    return q;
}

}  // namespace

double gamma(const PiecewiseMap& f, const PiecewiseMap& h, const Derivator& g,
             const GammaOptions& opts) {
    const double a = g.domain_lo(), b = g.domain_hi();

    std::vector<double> base = uniform_grid(a, b, opts.uniform_n);
    base.insert(base.end(), f.breakpoints().begin(), f.breakpoints().end());
    base.insert(base.end(), h.breakpoints().begin(), h.breakpoints().end());
    base.insert(base.end(), g.breakpoints().begin(), g.breakpoints().end());
    base.insert(base.end(), opts.extra_points.begin(), opts.extra_points.end());
    base = merge_points(std::move(base));

    std::vector<double> fv(base.size()), hv(base.size()), gv(base.size());
    for (size_t i = 0; i < base.size(); ++i) {
        fv[i] = f.eval(base[i]);
        hv[i] = h.eval(base[i]);
        gv[i] = g.eval(base[i]);
    }

    double best = 0.0;
    for (size_t i = 0; i < base.size(); ++i) {
        for (size_t j = i + 1; j < base.size(); ++j) {
            if (gv[i] == gv[j]) continue;
            double dg = gv[j] - gv[i];
            best = std::max(best, chordal((fv[j] - fv[i]) / dg, (hv[j] - hv[i]) / dg));
        }
    }

    // One-sided quotients across each jump, s -> t+ realized exactly.
    for (const auto& [t, dg] : g.jumps()) {
        if (t >= b) continue;
        best = std::max(best, chordal((f.right_limit(t) - f.eval(t)) / dg,
                                      (h.right_limit(t) - h.eval(t)) / dg));
    }

    // Near-diagonal geometric pairs anchored at breakpoints: these reach the
    // divergent quotients living at plateau/jump interfaces.
    std::vector<double> anchors = f.breakpoints();
    anchors.insert(anchors.end(), h.breakpoints().begin(), h.breakpoints().end());
    anchors.insert(anchors.end(), g.breakpoints().begin(), g.breakpoints().end());
    anchors.insert(anchors.end(), opts.extra_points.begin(), opts.extra_points.end());
    anchors = merge_points(std::move(anchors));

    std::vector<double> offsets = {0.0};
    for (int k : opts.offset_exponents) offsets.push_back(std::pow(2.0, -k));

    for (double c : anchors) {
        for (double o1 : offsets) {
            double s = c - o1;
            if (s < a || s > b) continue;
            for (double o2 : offsets) {
                if (o1 == 0.0 && o2 == 0.0) continue;
                double t = c + o2;
                if (t < a || t > b || t == s) continue;
                if (auto q = quotients(f, h, g, s, t)) best = std::max(best, chordal(q->qf, q->qh));
            }
        }
    }
    return best;
}

namespace {

double sampled_sup_gap(const PiecewiseMap& f, const PiecewiseMap& h, int grid_n) {
    auto pts = uniform_grid(f.domain_lo(), f.domain_hi(), grid_n);
    pts.insert(pts.end(), f.breakpoints().begin(), f.breakpoints().end());
    pts.insert(pts.end(), h.breakpoints().begin(), h.breakpoints().end());
    pts = merge_points(std::move(pts));
    double m = 0.0;
    for (double t : pts) {
        m = std::max(m, std::fabs(f.eval(t) - h.eval(t)));
        if (t > f.domain_lo()) m = std::max(m, std::fabs(f.left_limit(t) - h.left_limit(t)));
        if (t < f.domain_hi()) m = std::max(m, std::fabs(f.right_limit(t) - h.right_limit(t)));
    }
    return m;
}

double sampled_deriv_gap(const PiecewiseMap& f, const PiecewiseMap& h, const Derivator& g,
                         int grid_n, double deriv_tol) {
    auto pts = uniform_grid(g.domain_lo(), g.domain_hi(), grid_n);
    pts.insert(pts.end(), f.breakpoints().begin(), f.breakpoints().end());
    pts.insert(pts.end(), h.breakpoints().begin(), h.breakpoints().end());
    pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
    pts = merge_points(std::move(pts));
    double m = 0.0;
    for (double t : pts)
        m = std::max(m, std::fabs(g_derivative_value(f, g, t, deriv_tol) -
                                  g_derivative_value(h, g, t, deriv_tol)));
    return m;
}

}  // namespace

MetricReport bd1_distance(const PiecewiseMap& f, const PiecewiseMap& h, const Derivator& g,
                          const MetricGrids& grids) {
    MetricReport rep;
    rep.sup_norm_gap = sampled_sup_gap(f, h, grids.sup_n);
    rep.deriv_gap = sampled_deriv_gap(f, h, g, grids.deriv_n, grids.deriv_tol);
    rep.gamma = gamma(f, h, g, grids.gamma_opts);
    rep.d = rep.sup_norm_gap + rep.deriv_gap + rep.gamma;
    return rep;
}

bool metric_axioms_check(const PiecewiseMap& f1, const PiecewiseMap& f2,
                         const PiecewiseMap& f3, const Derivator& g, const MetricGrids& grids,
                         double slack) {
    MetricGrids shared = grids;
    auto& extra = shared.gamma_opts.extra_points;
    extra.insert(extra.end(), f1.breakpoints().begin(), f1.breakpoints().end());
    extra.insert(extra.end(), f2.breakpoints().begin(), f2.breakpoints().end());
    extra.insert(extra.end(), f3.breakpoints().begin(), f3.breakpoints().end());
    extra = merge_points(std::move(extra));

    MetricReport d12 = bd1_distance(f1, f2, g, shared);
    MetricReport d21 = bd1_distance(f2, f1, g, shared);
    MetricReport d23 = bd1_distance(f2, f3, g, shared);
    MetricReport d13 = bd1_distance(f1, f3, g, shared);
    if (d12.d != d21.d) return false;
    if (d13.d > d12.d + d23.d + slack) return false;
    if (d12.d > d13.d + d23.d + slack) return false;
    if (d23.d > d12.d + d13.d + slack) return false;

    MetricReport self = bd1_distance(f1, f1, g, shared);
    if (self.d != 0.0) return false;
    if (d12.d == 0.0 && sampled_sup_gap(f1, f2, shared.sup_n) != 0.0) return false;
    return true;
}

CauchyProbe cauchy_probe(const std::vector<PiecewiseMap>& fns, const Derivator& g,
                         const std::vector<double>& eps_schedule, const MetricGrids& grids) {
    CauchyProbe probe;
    probe.eps_schedule = eps_schedule;
    const size_t n = fns.size();

    MetricGrids shared = grids;
    auto& extra = shared.gamma_opts.extra_points;
    for (const auto& f : fns)
        extra.insert(extra.end(), f.breakpoints().begin(), f.breakpoints().end());
    extra = merge_points(std::move(extra));

    probe.pairwise.assign(n, std::vector<MetricReport>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            probe.pairwise[i][j] = bd1_distance(fns[i], fns[j], g, shared);

    for (double eps : eps_schedule) {
        bool found = false;
        // a one-element tail is vacuous; demand at least one surviving pair
        for (size_t start = 0; start + 2 <= n && !found; ++start) {
            bool ok = true;
            for (size_t i = start; i < n && ok; ++i)
                for (size_t j = i + 1; j < n && ok; ++j)
                    if (probe.pairwise[i][j].d > eps) ok = false;
            if (ok) found = true;
        }
        probe.eps_cauchy.push_back(found);
    }
    return probe;
}

}  // namespace stieltjes
