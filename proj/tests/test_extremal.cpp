#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polyden/extremal.hpp"

using namespace polyden;

namespace {

discrete_measure random_measure(rng& g, int n) {
    std::vector<atom> atoms;
    while (int(atoms.size()) < n) {
        double x = g.uniform(-3.0, 3.0);
        bool close = false;
        for (const auto& a : atoms) close = close || std::abs(a.x - x) < 1e-2;
        if (!close) atoms.push_back({x, g.uniform(0.1, 1.0)});
    }
    return discrete_measure(std::move(atoms));
}

} // namespace

TEST_CASE("rho closed cases") {
    discrete_measure d0({{0.0, 1.0}});
    auto r = rho_n(d0, norm_param::lp(2.0), 0.0, 3);
    CHECK(r.value == doctest::Approx(1.0));
    REQUIRE(r.minimizer.coeffs.size() == 1);
    CHECK(r.minimizer.coeffs[0] == doctest::Approx(1.0));

    discrete_measure d1({{1.0, 1.0}});
    auto r1 = rho_n(d1, norm_param::lp(2.0), 0.0, 1);
    CHECK(r1.value == 0.0);
    // minimizer 1 - x vanishes on the support and is 1 at 0
    CHECK(r1.minimizer(0.0) == doctest::Approx(1.0));
    CHECK(r1.minimizer(1.0) == doctest::Approx(0.0).scale(1.0));

    discrete_measure pm({{-1.0, 0.5}, {1.0, 0.5}});
    CHECK(rho_n(pm, norm_param::lp(2.0), 0.0, 1).value == doctest::Approx(1.0));
    CHECK(rho_n(pm, norm_param::lp(2.0), 0.0, 2).value == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("M closed cases and the unbounded flag") {
    discrete_measure d0({{0.0, 1.0}});
    CHECK(M_n(d0, norm_param::lp(2.0), 0.0, 2).value == doctest::Approx(1.0));

    discrete_measure pm({{-1.0, 0.5}, {1.0, 0.5}});
    auto M = M_n(pm, norm_param::lp(2.0), 0.0, 2);
    CHECK(M.status == solve_status::unbounded);

    // (3.2.4)-style floor: mass 4 measure has M >= 1/4
    discrete_measure heavy({{-1.0, 2.0}, {2.0, 2.0}});
    auto Mh = M_n(heavy, norm_param::lp(2.0), 0.5, 2);
    CHECK(Mh.value >= 0.25);
}

TEST_CASE("kernel value equals brute-force minimization (oracle)") {
    rng g(11);
    for (int t = 0; t < 12; ++t) {
        auto mu = random_measure(g, 2 + int(g.below(7)));
        int n_hi = std::min(6, int(mu.size()) - 1);
        for (int n = 0; n <= n_hi; ++n) {
            double kernel = rho_n(mu, norm_param::lp(2.0), 0.0, n).value;
            double brute = oracle::rho2_at0(mu, n);
            CHECK(kernel == doctest::Approx(brute).epsilon(1e-8));
        }
    }
}

TEST_CASE("IRLS matches the grid oracle for p in {1, 1.5, 3}") {
    rng g(23);
    for (int t = 0; t < 6; ++t) {
        auto mu = random_measure(g, 3);
        for (double p : {1.0, 1.5, 3.0}) {
            for (int n : {1, 2}) {
                double irls = rho_n(mu, norm_param::lp(p), 0.0, n).value;
                double brute = oracle::rho_lp_at0(mu, p, n);
                CHECK(irls == doctest::Approx(brute).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("Lawson solves the weighted Chebyshev problem at degree 1") {
    // three points, equal weights: odd geometry solved by hand.
    // min max |1 + c x_i| over x in {-1, 0, 1}: c = 0 gives value 1.
    discrete_measure mu({{-1.0, 1.0}, {0.0, 1.0}, {1.0, 1.0}});
    double v = rho_n(mu, norm_param::supw(), 0.0, 1).value;
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    // weights 1 at +-1 and a light center: still 1 (p(0) = 1 is forced)
    discrete_measure mu2({{-1.0, 1.0}, {0.0, 0.1}, {1.0, 1.0}});
    double v2 = rho_n(mu2, norm_param::supw(), 0.0, 2).value;
    // p = 1 - x^2 kills the heavy endpoints; sup = 0.1 at the center
    CHECK(v2 == doctest::Approx(0.1).epsilon(1e-8));
}

TEST_CASE("rho nonincreasing, M nondecreasing in the degree") {
    rng g(31);
    auto mu = random_measure(g, 7);
    for (auto nm : {norm_param::lp(2.0), norm_param::lp(1.5), norm_param::supw()}) {
        double prev_rho = 1e300, prev_M = 0.0;
        for (int n = 0; n <= 5; ++n) {
            double r = rho_n(mu, nm, 0.5, n).value;
            CHECK(r <= prev_rho * (1 + 1e-10) + 1e-15);
            prev_rho = r;
            auto M = M_n(mu, nm, 0.5, n);
            if (M.status == solve_status::ok) {
                CHECK(M.value >= prev_M * (1 - 1e-10));
                prev_M = M.value;
            }
        }
    }
}

TEST_CASE("norm homogeneity under measure scaling") {
    rng g(43);
    auto mu = random_measure(g, 5);
    for (double lambda : {0.25, 3.0}) {
        std::vector<atom> scaled;
        for (const auto& a : mu.atoms()) scaled.push_back({a.x, a.mass * lambda});
        discrete_measure mu2(scaled);
        for (double p : {1.0, 2.0, 3.0}) {
            double r1 = rho_n(mu, norm_param::lp(p), 0.0, 2).value;
            double r2 = rho_n(mu2, norm_param::lp(p), 0.0, 2).value;
            CHECK(r2 == doctest::Approx(std::pow(lambda, 1.0 / p) * r1).epsilon(1e-9));
        }
    }
}

TEST_CASE("sandwich holds at complex z for all norms") {
    rng g(59);
    auto mu = random_measure(g, 6);
    std::vector<cplx> zs = {0.0, 0.5, cplx(0.0, 1.0), cplx(1.0, 0.5)};
    for (auto nm : {norm_param::lp(1.0), norm_param::lp(2.0), norm_param::lp(3.0),
                    norm_param::supw()}) {
        for (cplx z : zs) {
            double rho = rho_n(mu, nm, z, 3).value;
            auto M = M_n(mu, nm, z, 3);
            REQUIRE(M.status == solve_status::ok);
            CHECK(M.value >= (1.0 / rho) * (1 - 1e-9));
            CHECK(M.value <= (2.0 / rho) * (1 + 1e-9));
        }
    }
}

TEST_CASE("rho_limit on a finite measure reaches zero at n = N") {
    rng g(67);
    auto mu = random_measure(g, 5);
    auto lim = rho_limit(mu, norm_param::lp(2.0), tilt_mode::plain, 0.123, 6, 0.01);
    CHECK(lim.verdict == limit_verdict::converged_to_zero);
    CHECK(lim.rho[5] <= 1e-10);
    for (std::size_t i = 1; i < lim.rho.size(); ++i) CHECK(lim.rho[i] <= lim.rho[i - 1] + 1e-15);
}

TEST_CASE("Hermite-like discretization decays without plateau") {
    auto mu = from_quadrature([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 200);
    auto lim = rho_limit(mu, norm_param::lp(2.0), tilt_mode::alpha, 0.0, 30, 0.01);
    CHECK(lim.verdict == limit_verdict::undecided); // decay, not plateau, not yet zero
    CHECK(lim.rho[10] / lim.rho[30] > 5.0);
}

TEST_CASE("monotone and even in y (Proposition 2.3)") {
    discrete_measure pm({{-1.0, 0.5}, {1.0, 0.5}});
    auto rep = check_monotone_y(pm, norm_param::lp(2.0), 0.0, {0.0, 1.0, 2.0}, 1);
    REQUIRE(rep.values.size() == 3);
    CHECK(rep.values[0] <= rep.values[1]);
    CHECK(rep.values[1] <= rep.values[2]);

    // degree 0: constants, M independent of z
    auto rep0 = check_monotone_y(pm, norm_param::lp(2.0), 0.7, {0.0, 1.5, 3.0}, 0);
    CHECK(rep0.values[0] == doctest::Approx(rep0.values[2]).epsilon(1e-12));
}

TEST_CASE("tilt inequalities (2.1.6)") {
    rng g(71);
    auto mu = random_measure(g, 6);
    for (double p : {1.5, 2.0}) {
        auto rep = check_tilt_inequalities(mu, norm_param::lp(p), 0.5, 3);
        CHECK(rep.holds);
        // n = 1 edge: rho_0 of the second tilt is the norm of the constant 1
        auto edge = check_tilt_inequalities(mu, norm_param::lp(p), 0.5, 1);
        CHECK(edge.holds);
        discrete_measure t2 = tilt(mu, p, tilt_mode::alpha2);
        CHECK(edge.rho_alpha2_nm1 ==
              doctest::Approx(poly_norm(t2, norm_param::lp(p), poly_real({1.0}))));
    }
    // tiny |z| leaves the inequality slack
    auto tiny = check_tilt_inequalities(mu, norm_param::lp(2.0), 1e-8, 2);
    CHECK(tiny.holds);
}

TEST_CASE("best approximation interpolates on few atoms") {
    discrete_measure mu({{-2.0, 1.0}, {-1.0, 1.0}, {0.5, 1.0}, {1.5, 1.0}, {3.0, 1.0}});
    std::vector<double> f;
    for (const auto& a : mu.atoms()) f.push_back(1.0 / (1.0 + a.x * a.x));
    CHECK(best_approximation(mu, norm_param::lp(2.0), f, 4).value <= 1e-10);
    CHECK(best_approximation(mu, norm_param::lp(2.0), f, 1).value > 1e-3);
}
