#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polyden/family.hpp"

using namespace polyden;

namespace {

grid_weight sampled(double a, double b, int n, const std::function<double(double)>& f) {
    std::vector<double> xs, ws;
    for (int i = 0; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        xs.push_back(x);
        ws.push_back(f(x));
    }
    return grid_weight(xs, ws);
}

} // namespace

TEST_CASE("lambda functionals") {
    CHECK(lambda_functionals(star_poly({-1.0, 1.0})) == std::pair<double, double>{0.0, 2.0});
    CHECK(lambda_functionals(star_poly({1.0})) == std::pair<double, double>{1.0, 1.0});
    auto [l1, l2] = lambda_functionals(star_poly({1.0, 2.0, 4.0}));
    CHECK(l1 == doctest::Approx(1.75));
    CHECK(l2 == doctest::Approx(1.3125));

    // reflection preserves both
    auto [r1, r2] = lambda_functionals(star_poly({-1.0, -2.0, -4.0}));
    CHECK(r1 == doctest::Approx(l1));
    CHECK(r2 == doctest::Approx(l2));
}

TEST_CASE("Lemma 3.2 membership") {
    star_poly P({-1.0, 1.0}); // 1 - x^2
    lemma32_params prm{1.0, 1.0, 1.0, 1.0, 0.1};
    CHECK(member_lemma32(P, prm)); // sum e^{-1} x2 ~ 0.7358 <= 1; |P'| = 2 >= 0.1/e

    // {1 - nx} breaks gamma > 0 normality for large n
    auto one_minus_nx = [](int n) { return star_poly({1.0 / n}); };
    lemma32_params prm2{1.0, 1.0, 1.0, 2.0, 0.1};
    CHECK(member_lemma32(one_minus_nx(2), prm2));
    CHECK_FALSE(member_lemma32(one_minus_nx(50), prm2));

    // shrinking the exponential budget flips the first condition
    lemma32_params tight{1.0, 1.0, 1.0, 0.5, 0.1};
    CHECK_FALSE(member_lemma32(P, tight));

    // monotone in the budget parameters
    lemma32_params loose{1.0, 1.0, 1.0, 5.0, 0.01};
    CHECK(member_lemma32(P, loose));
}

TEST_CASE("Theorem 3.3 membership with a weight proxy") {
    star_poly P({-1.0, 1.0});
    auto mu_narrow = sampled(-6, 6, 2400, [](double x) { return std::exp(-x * x); });
    auto mu_wide = sampled(-6, 6, 2400, [](double x) { return std::exp(-x * x / 4); });
    // |P'(+-1)| = 2 against 1/mu(1): e ~ 2.718 fails, e^{1/4} ~ 1.284 passes
    CHECK_FALSE(member_thm33(P, mu_narrow, 1.0, 1.0, 5.0));
    CHECK(member_thm33(P, mu_wide, 1.0, 1.0, 5.0));

    // adding a far zero with huge |P'| keeps membership
    star_poly P2({-1.0, 1.0, 5.9});
    CHECK(member_thm33(P2, mu_wide, 1.0, 1.0, 5.0));

    // missing coverage
    star_poly Pfar({-1.0, 1.0, 50.0});
    CHECK_THROWS_AS(member_thm33(Pfar, mu_wide, 1.0, 1.0, 5.0), error);
}

TEST_CASE("(3.4.10) membership") {
    star_poly P({-1.0, 1.0});
    auto mu1 = sampled(-3, 3, 600, [](double) { return 1.0; });
    CHECK(member_eq3410(P, mu1, 2.0, 1.0, 2.0));  // sum = 2 * 1/(1*1*2) = 1 <= 2
    CHECK_FALSE(member_eq3410(P, mu1, 2.0, 1.0, 0.5));
    CHECK_THROWS_AS(member_eq3410(P, mu1, 1.0, 1.0, 2.0), error); // needs beta > gamma

    // monotone in C and in the weight
    auto mu_small = sampled(-3, 3, 600, [](double) { return 0.5; });
    CHECK(member_eq3410(P, mu1, 2.0, 1.0, 2.0));
    CHECK(member_eq3410(P, mu_small, 2.0, 1.0, 2.5)); // halving mu doubles the sum
}

TEST_CASE("growth bound for Lemma 3.2 members") {
    rng g(13);
    lemma32_params prm{0.5, 1.0, 1.0, 6.0, 0.01};
    int accepted = 0;
    while (accepted < 40) {
        int deg = 1 + int(g.below(5));
        std::vector<double> zs;
        while (int(zs.size()) < deg) {
            double x = (g.u01() < 0.5 ? -1 : 1) * g.uniform(0.5, 8.0);
            bool close = false;
            for (double z : zs) close = close || std::abs(z - x) < 0.1;
            if (!close) zs.push_back(x);
        }
        star_poly P(zs);
        if (!member_lemma32(P, prm)) continue;
        ++accepted;
        auto [l1, l2] = lambda_functionals(P);
        for (int t = 0; t < 10; ++t) {
            cplx z = std::polar(3.0 * std::sqrt(g.u01()), g.uniform(0.0, 2 * M_PI));
            CHECK(std::abs(P(z)) <=
                  std::exp(l1 * std::abs(z) + 0.5 * l2 * std::norm(z)) * (1 + 1e-9));
        }
    }
}

TEST_CASE("family diagnostics") {
    // truncated sinc divisors: l1 = 0, l2 < pi^2/3, constant zero tracks
    std::vector<star_poly> divisors;
    for (int N : {3, 5, 8, 12}) {
        std::vector<double> zs;
        for (int k = 1; k <= N; ++k) {
            zs.push_back(double(k));
            zs.push_back(double(-k));
        }
        divisors.emplace_back(zs);
    }
    auto rep = family_diagnostic(divisors, 2.0);
    CHECK(rep.sup_l1 == doctest::Approx(0.0).scale(1.0));
    CHECK(rep.sup_l2 < M_PI * M_PI / 3.0);
    for (std::size_t j = 0; j < 6; ++j) CHECK(rep.zero_track_spread[j] <= 1.0);

    // {1 - nx}: l2 = n^2 blows up
    std::vector<star_poly> bad;
    for (int n : {1, 2, 4, 8, 16}) bad.emplace_back(std::vector<double>{1.0 / n});
    auto rb = family_diagnostic(bad, 2.0);
    CHECK(rb.sup_l2 == doctest::Approx(256.0));

    // a single polynomial repeated: everything degenerate
    std::vector<star_poly> rep3(3, star_poly({1.0, -2.0}));
    auto rr = family_diagnostic(rep3, 2.0);
    CHECK(rr.sup_l1 == doctest::Approx(0.5));
    for (double d : rr.consecutive_distance) CHECK(d == 0.0);
    for (double s : rr.zero_track_spread) CHECK(s == 0.0);
}
