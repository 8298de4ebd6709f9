#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "polyden/io.hpp"
#include "polyden/measure.hpp"

using namespace polyden;

TEST_CASE("moments of elementary measures") {
    // point mass at the origin
    discrete_measure d0({{0.0, 1.0}});
    CHECK(d0.moments(3) == std::vector<double>{1, 0, 0, 0});

    // symmetric pair kills odd moments
    discrete_measure sym({{-1.0, 0.5}, {1.0, 0.5}});
    CHECK(sym.moments(4) == std::vector<double>{1, 0, 1, 0, 1});

    discrete_measure two({{1.0, 1.0}, {2.0, 1.0}});
    CHECK(two.moments(2) == std::vector<double>{2, 3, 5});
}

TEST_CASE("moments are additive over disjoint supports") {
    discrete_measure a({{-2.0, 0.3}, {0.5, 1.1}});
    discrete_measure b({{1.0, 0.7}, {3.0, 0.2}});
    discrete_measure ab({{-2.0, 0.3}, {0.5, 1.1}, {1.0, 0.7}, {3.0, 0.2}});
    auto ma = a.moments(6), mb = b.moments(6), mab = ab.moments(6);
    for (int k = 0; k <= 6; ++k)
        CHECK(mab[std::size_t(k)] ==
              doctest::Approx(ma[std::size_t(k)] + mb[std::size_t(k)]).epsilon(1e-14));
}

TEST_CASE("tilt scalings and the pointwise identity") {
    discrete_measure at0({{0.0, 1.0}});
    auto t0 = tilt(at0, 2.0, tilt_mode::alpha);
    CHECK(t0.atoms()[0].mass == 1.0); // (1+0)^{-2} = 1

    discrete_measure at1({{1.0, 1.0}});
    CHECK(tilt(at1, 2.0, tilt_mode::alpha).atoms()[0].mass == doctest::Approx(0.25));

    CHECK_THROWS_WITH_AS(tilt(at0, 2.0, tilt_mode::alpha2), doctest::Contains("emptied"),
                         error);

    // alpha mass * |x|^alpha == alpha2 mass at every nonzero atom
    discrete_measure mu({{-2.0, 0.4}, {0.5, 1.0}, {3.0, 0.6}});
    for (double alpha : {1.0, 2.0, 3.5}) {
        auto ta = tilt(mu, alpha, tilt_mode::alpha);
        auto ta2 = tilt(mu, alpha, tilt_mode::alpha2);
        for (std::size_t i = 0; i < mu.size(); ++i) {
            double x = mu.atoms()[i].x;
            CHECK(ta.atoms()[i].x == x); // positions preserved
            CHECK(ta.atoms()[i].mass <= mu.atoms()[i].mass);
            CHECK(ta2.atoms()[i].mass ==
                  doctest::Approx(ta.atoms()[i].mass * std::pow(std::abs(x), alpha))
                      .epsilon(1e-14));
        }
    }
}

TEST_CASE("midpoint quadrature discretization") {
    auto unif = from_quadrature([](double) { return 1.0; }, 0.0, 1.0, 4);
    REQUIRE(unif.size() == 4);
    CHECK(unif.atoms()[0].x == doctest::Approx(0.125));
    CHECK(unif.atoms()[3].x == doctest::Approx(0.875));
    for (const auto& a : unif.atoms()) CHECK(a.mass == doctest::Approx(0.25));

    // Gaussian: s_0 ~ sqrt(pi), oracle = high-resolution midpoint run
    auto gauss = from_quadrature([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 200);
    auto fine = from_quadrature([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 20000);
    double s0 = gauss.moments(0)[0];
    CHECK(s0 == doctest::Approx(fine.moments(0)[0]).epsilon(1e-6));
    CHECK(s0 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-6));

    // log-normal mean: closed form exp(1/2)
    const double s2pi = std::sqrt(2.0 * M_PI);
    auto logn = from_quadrature(
        [&](double x) { return std::exp(-0.5 * std::log(x) * std::log(x)) / (x * s2pi); }, 1e-6,
        50.0, 400);
    CHECK(logn.moments(1)[1] == doctest::Approx(std::exp(0.5)).epsilon(1e-4));

    CHECK_THROWS_AS(from_quadrature([](double) { return 0.0; }, 0.0, 1.0, 8), error);
    CHECK_THROWS_AS(from_quadrature([](double) { return 1.0; }, 1.0, 0.0, 8), error);
}

TEST_CASE("measure file round trip") {
    rng g(42);
    std::vector<atom> atoms;
    for (int i = 0; i < 10; ++i) atoms.push_back({g.uniform(-5, 5), g.uniform(0.01, 2.0)});
    discrete_measure mu(atoms);
    std::string path = "measure_roundtrip.json";
    io::save_measure(mu, path);
    auto back = io::load_measure(path);
    REQUIRE(back.size() == mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        CHECK(back.atoms()[i].x == mu.atoms()[i].x);
        CHECK(back.atoms()[i].mass == mu.atoms()[i].mass);
    }
    std::remove(path.c_str());
}

TEST_CASE("loader validation") {
    std::string path = "measure_invalid.json";
    io::write_file(path, R"({"atoms":[{"x":1.0,"mass":0.0}]})");
    CHECK_THROWS_AS(io::load_measure(path), error);
    io::write_file(path, R"({"atoms":[{"x":2.0,"mass":1.0},{"x":-1.0,"mass":0.5}]})");
    auto mu = io::load_measure(path); // loader sorts unsorted input
    CHECK(mu.atoms()[0].x == -1.0);
    io::write_file(path, R"({"atoms": [{"x": 1.0)");
    CHECK_THROWS_AS(io::load_measure(path), error);
    std::remove(path.c_str());
}
