#include "polyden/weight.hpp"

#include <algorithm>
#include <cmath>

namespace polyden {

grid_weight::grid_weight(std::vector<double> xs_, std::vector<double> ws_)
    : xs(std::move(xs_)), ws(std::move(ws_)) {
    if (xs.empty() || xs.size() != ws.size())
        fail(errc::validation, "grid weight needs equal nonempty xs/ws");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i])) fail(errc::validation, "grid node not finite");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            fail(errc::validation, "grid must be strictly increasing at index " + std::to_string(i));
        if (!(ws[i] >= 0.0 && ws[i] <= 1.0))
            fail(errc::validation, "weight value outside [0,1] at x=" + format17(xs[i]));
    }
    for (std::size_t i = 1; i < xs.size(); ++i) resolution = std::max(resolution, xs[i] - xs[i - 1]);
    if (xs.size() == 1) resolution = 1.0;
}

std::size_t grid_weight::nearest(double x) const {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return xs.size() - 1;
    std::size_t j = std::size_t(it - xs.begin());
    if (j == 0) return 0;
    return (x - xs[j - 1] <= xs[j] - x) ? j - 1 : j;
}

double grid_weight::value_at(double x) const {
    if (x < xs.front() - resolution || x > xs.back() + resolution)
        fail(errc::weight_vanishes, "weight not covered at x=" + format17(x));
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ws.back();
    std::size_t j = std::size_t(it - xs.begin());
    if (j == 0 || xs[j] == x) return ws[j];
    double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return (1.0 - t) * ws[j - 1] + t * ws[j];
}

grid_weight upper_baire(const grid_weight& w) {
    grid_weight out = w;
    std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        double m = w.ws[i];
        if (i > 0) m = std::max(m, w.ws[i - 1]);
        if (i + 1 < n) m = std::max(m, w.ws[i + 1]);
        out.ws[i] = m;
    }
    return out;
}

space_class classify_space(const grid_weight& w) {
    grid_weight h = upper_baire(w);
    std::size_t n = h.size();
    space_class sc;

    // (1.4.7): every grid point within `resolution` of a node of S_h
    sc.normed = true;
    double prev_support = -std::numeric_limits<double>::infinity();
    std::vector<double> support_xs;
    for (std::size_t i = 0; i < n; ++i)
        if (h.ws[i] > 0.0) support_xs.push_back(h.xs[i]);
    if (support_xs.empty()) {
        sc.normed = false;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            auto it = std::lower_bound(support_xs.begin(), support_xs.end(), h.xs[i]);
            double d = std::numeric_limits<double>::infinity();
            if (it != support_xs.end()) d = std::min(d, *it - h.xs[i]);
            if (it != support_xs.begin()) d = std::min(d, h.xs[i] - *(it - 1));
            if (d > h.resolution) { sc.normed = false; break; }
        }
    }
    (void)prev_support;

    // (1.4.8d): S_h is the whole grid and h is bounded away from 0 on every
    // bounded window; finite grid => the global minimum decides.
    double min_all = 1.0, min_support = 1.0;
    bool full_support = true;
    for (std::size_t i = 0; i < n; ++i) {
        min_all = std::min(min_all, h.ws[i]);
        if (h.ws[i] > 0.0)
            min_support = std::min(min_support, h.ws[i]);
        else
            full_support = false;
    }
    sc.banach_c0w = full_support && min_all > 0.0;
    // (1.4.9d): infimum over S_h intersected with any window is positive
    sc.banach_n0w = !support_xs.empty() && min_support > 0.0;
    return sc;
}

std::vector<double> moment_boundedness(const grid_weight& w, int n_max) {
    if (n_max < 0) fail(errc::validation, "n_max must be >= 0");
    std::vector<double> out;
    out.reserve(std::size_t(n_max) + 1);
    for (int k = 0; k <= n_max; ++k) {
        double m = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            m = std::max(m, std::pow(std::abs(w.xs[i]), k) * w.ws[i]);
        out.push_back(m);
    }
    return out;
}

theorem12_report check_theorem12_conditions(const std::vector<double>& f, const grid_weight& w,
                                            int m_max, double eps) {
    if (f.size() != w.size()) fail(errc::validation, "f must be sampled on the weight grid");
    grid_weight h = upper_baire(w);
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h.ws[i] > 0.0 && std::isnan(f[i]))
            fail(errc::validation, "f undefined at x=" + format17(h.xs[i]) + " where M_w > 0");

    theorem12_report rep;
    for (int m = 1; m <= m_max; ++m) {
        double mod = 0.0;
        for (std::size_t i = 0; i + 1 < h.size(); ++i)
            if (h.ws[i] >= 1.0 / m && h.ws[i + 1] >= 1.0 / m)
                mod = std::max(mod, std::abs(f[i + 1] - f[i]));
        rep.continuity_moduli.push_back(mod);
    }

    double max_h = 0.0;
    for (double v : h.ws) max_h = std::max(max_h, v);
    double delta = max_h;
    for (int step = 0; step < 12 && delta > 0; ++step) {
        delta /= 2.0;
        double sup = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h.ws[i] > 0.0 && h.ws[i] < delta) {
                any = true;
                sup = std::max(sup, h.ws[i] * std::abs(f[i]));
            }
        rep.smallness_ladder.emplace_back(delta, any ? sup : 0.0);
    }
    // the condition holds when the ladder tail drops below eps (or the
    // small-weight region is empty)
    rep.vanishing_condition_holds = rep.smallness_ladder.empty() ||
                                    rep.smallness_ladder.back().second < eps;
    return rep;
}

witness_result unbounded_witness(const grid_weight& h, double x0) {
    // pick grid nodes approaching x0 with h > 0 and h strictly decreasing to 0
    std::vector<std::size_t> order(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(h.xs[a] - x0) > std::abs(h.xs[b] - x0);
    });
    // scan from far to near keeping a strictly-decreasing-h chain ending near x0
    std::vector<std::size_t> chain;
    double current = std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
        double v = h.ws[idx];
        if (v > 0.0 && v < current * 0.999) {
            chain.push_back(idx);
            current = v;
        }
    }
    if (chain.size() < 3 || current > 0.5 * h.ws[chain.front()])
        fail(errc::no_vanishing_sequence,
             "no grid sequence with h -> 0 approaching x0=" + format17(x0));

    witness_result res;
    res.values.assign(h.size(), 0.0);
    res.nodes = chain;
    for (std::size_t k = 0; k < chain.size(); ++k) res.lambda.push_back(1.0 / h.ws[chain[k]]);

    // F(x_k) = sqrt(lambda_{k-1}); hats are single-node on the grid, which
    // keeps them disjoint for any node spacing
    for (std::size_t k = 1; k < chain.size(); ++k)
        res.values[chain[k]] = std::sqrt(res.lambda[k - 1]);

    for (std::size_t k = 1; k < chain.size(); ++k) {
        double radius = std::abs(h.xs[chain[k]] - x0) + h.resolution;
        double wmax = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i)
            if (std::abs(h.xs[i] - x0) <= radius) wmax = std::max(wmax, res.values[i]);
        res.window_max.push_back(wmax);

        double hw = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h.ws[i] > 0.0 && h.ws[i] < 1.0 / res.lambda[k])
                hw = std::max(hw, h.ws[i] * res.values[i]);
        res.weighted_max.push_back(hw);
    }
    return res;
}

} // namespace polyden
