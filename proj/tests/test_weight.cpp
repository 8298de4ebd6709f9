#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polyden/weight.hpp"

using namespace polyden;

namespace {

grid_weight uniform_grid(double a, double b, int n, const std::function<double(double)>& f) {
    std::vector<double> xs, ws;
    for (int i = 0; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        xs.push_back(x);
        ws.push_back(f(x));
    }
    return grid_weight(xs, ws);
}

} // namespace

TEST_CASE("upper Baire regularization on the grid") {
    grid_weight flat = uniform_grid(0, 1, 10, [](double) { return 0.5; });
    auto mf = upper_baire(flat);
    CHECK(mf.ws == flat.ws);

    // interior dip is replaced by the window max
    grid_weight dip({0, 1, 2, 3, 4}, {0.8, 0.8, 0.1, 0.8, 0.8});
    auto md = upper_baire(dip);
    CHECK(md.ws[2] == 0.8);

    // one-point indicator raises the neighbors
    grid_weight ind({0, 1, 2, 3, 4}, {0, 0, 1, 0, 0});
    auto mi = upper_baire(ind);
    CHECK(mi.ws == std::vector<double>{0, 1, 1, 1, 0});

    // idempotent on its own output, dominates the input
    grid_weight rnd({0, 0.5, 1.2, 2, 2.5}, {0.3, 0.9, 0.0, 0.4, 0.2});
    auto m1 = upper_baire(rnd);
    auto m2 = upper_baire(m1);
    for (std::size_t i = 0; i < rnd.size(); ++i) {
        CHECK(m1.ws[i] >= rnd.ws[i]);
        CHECK(m1.ws[i] <= 1.0);
    }
    // one-step window maxima stabilize after widening once more only at dips
    CHECK(m2.ws[2] >= m1.ws[2]);
}

TEST_CASE("space classification (grid sense)") {
    auto ones = uniform_grid(-5, 5, 100, [](double) { return 1.0; });
    auto c1 = classify_space(ones);
    CHECK(c1.normed);
    CHECK(c1.banach_c0w);
    CHECK(c1.banach_n0w);

    auto gauss = uniform_grid(-10, 10, 400, [](double x) { return std::exp(-x * x); });
    auto c2 = classify_space(gauss);
    CHECK(c2.banach_c0w); // positive, continuous: window minima attained > 0
    CHECK(c2.normed);

    auto indicator =
        uniform_grid(-5, 5, 100, [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; });
    auto c3 = classify_space(indicator);
    CHECK(c3.banach_n0w);
    CHECK_FALSE(c3.banach_c0w);
    CHECK_FALSE(c3.normed);

    // stability of the classification under regularization
    auto c3m = classify_space(upper_baire(indicator));
    CHECK(c3.normed == c3m.normed);
    CHECK(c3.banach_c0w == c3m.banach_c0w);
    CHECK(c3.banach_n0w == c3m.banach_n0w);
}

TEST_CASE("Theorem 1.2 condition proxies") {
    // Chebyshev-style weight on [-1,1]: M_w * |f| == 1 never drops below eps
    auto w = uniform_grid(-1, 1, 200, [](double x) {
        double s = 1.0 - x * x;
        return s > 0 ? std::sqrt(s) : 0.0;
    });
    std::vector<double> f;
    for (double x : w.xs) {
        double s = 1.0 - x * x;
        f.push_back(s > 0 ? 1.0 / std::sqrt(s) : std::numeric_limits<double>::quiet_NaN());
    }
    // f is undefined exactly where M_w > 0 at the boundary nodes: the window
    // max extends one node outward, so fill those with huge finite values
    for (std::size_t i = 0; i < f.size(); ++i)
        if (std::isnan(f[i])) f[i] = 1e12;
    auto rep = check_theorem12_conditions(f, w, 5, 0.5);
    CHECK_FALSE(rep.vanishing_condition_holds);

    std::vector<double> ones(w.size(), 1.0);
    auto rep1 = check_theorem12_conditions(ones, w, 5, 1e-3);
    CHECK(rep1.vanishing_condition_holds);

    // bounded support, polynomial f: both proxies behave
    auto wc = uniform_grid(-1, 1, 100, [](double x) { return std::abs(x) <= 0.5 ? 1.0 : 0.0; });
    std::vector<double> fp;
    for (double x : wc.xs) fp.push_back(x * x + 1);
    auto rep2 = check_theorem12_conditions(fp, wc, 4, 0.5);
    CHECK(rep2.vanishing_condition_holds);
    for (double m : rep2.continuity_moduli) CHECK(m <= 0.1);
}

TEST_CASE("moment boundedness report") {
    grid_weight w({-2, -1, 0, 1, 2}, {1, 1, 1, 1, 1});
    CHECK(moment_boundedness(w, 3) == std::vector<double>{1, 2, 4, 8});

    auto we = uniform_grid(-20, 20, 4000, [](double x) { return std::exp(-std::abs(x)); });
    auto mb = moment_boundedness(we, 1);
    CHECK(mb[1] == doctest::Approx(1.0 / std::exp(1.0)).epsilon(1e-3));

    grid_weight zero({0, 1, 2}, {0, 0, 0});
    CHECK(moment_boundedness(zero, 2) == std::vector<double>{0, 0, 0});

    // monotone under pointwise domination
    auto w2 = uniform_grid(-20, 20, 4000, [](double x) { return 0.5 * std::exp(-std::abs(x)); });
    auto mb2 = moment_boundedness(w2, 4);
    auto mb1 = moment_boundedness(we, 4);
    for (int k = 0; k <= 4; ++k) CHECK(mb2[std::size_t(k)] <= mb1[std::size_t(k)]);
}

TEST_CASE("unbounded witness construction (1.7.2.1)") {
    // h = 4^{-n} at x_n = 1/n, zero elsewhere
    std::vector<double> xs, ws;
    for (int n = 12; n >= 1; --n) {
        xs.push_back(1.0 / n);
        ws.push_back(std::pow(4.0, -n));
    }
    xs.insert(xs.begin(), 0.0);
    ws.insert(ws.begin(), 0.0);
    grid_weight h(xs, ws);
    auto res = unbounded_witness(h, 0.0);
    REQUIRE(res.nodes.size() >= 10);
    // F(x_n) = 2^{n-1} at the selected nodes past the first
    for (std::size_t k = 1; k < res.nodes.size(); ++k) {
        double x = h.xs[res.nodes[k]];
        int n = int(std::lround(1.0 / x));
        CHECK(res.values[res.nodes[k]] == doctest::Approx(std::pow(2.0, n - 1)).epsilon(1e-12));
    }
    // window maxima grow without bound, weighted maxima stay <= 1/sqrt(lambda_n)
    for (std::size_t k = 1; k + 1 < res.window_max.size(); ++k)
        CHECK(res.window_max[k + 1] >= res.window_max[k]);
    for (std::size_t k = 0; k < res.weighted_max.size(); ++k)
        CHECK(res.weighted_max[k] <= 1.0 / std::sqrt(res.lambda[k + 1]) + 1e-12);

    // h(x_n) = 1/n: F(x_n) = sqrt(n-1)
    std::vector<double> xs2, ws2;
    for (int n = 40; n >= 1; --n) {
        xs2.push_back(1.0 / n);
        ws2.push_back(1.0 / n);
    }
    grid_weight h2(xs2, ws2);
    auto res2 = unbounded_witness(h2, 0.0);
    for (std::size_t k = 1; k < res2.nodes.size(); ++k) {
        double x = h2.xs[res2.nodes[k]];
        int n = int(std::lround(1.0 / x));
        CHECK(res2.values[res2.nodes[k]] == doctest::Approx(std::sqrt(n - 1.0)).epsilon(1e-12));
    }

    // bounded-below h has no vanishing sequence
    auto flat = uniform_grid(-1, 1, 50, [](double) { return 0.4; });
    CHECK_THROWS_AS(unbounded_witness(flat, 0.0), error);
}
