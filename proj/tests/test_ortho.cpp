#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polyden/measure.hpp"
#include "polyden/ortho.hpp"

using namespace polyden;

TEST_CASE("two-point symmetric measure by hand") {
    discrete_measure mu({{-1.0, 0.5}, {1.0, 0.5}});
    ortho_basis basis(mu, 1);
    CHECK(basis.a()[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(basis.a()[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(basis.b()[0] == doctest::Approx(1.0));
    CHECK(basis.h()[0] == doctest::Approx(1.0));
    CHECK(basis.h()[1] == doctest::Approx(1.0));
}

TEST_CASE("degree cannot reach the atom count") {
    discrete_measure mu({{0.0, 1.0}});
    CHECK_THROWS_AS(ortho_basis(mu, 1), error);
}

TEST_CASE("Hermite-like recurrence b_k ~ k/2") {
    auto mu = from_quadrature([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 100);
    ortho_basis basis(mu, 10);
    for (int k = 1; k <= 10; ++k)
        CHECK(basis.b()[std::size_t(k) - 1] == doctest::Approx(k / 2.0).epsilon(1e-3));
    CHECK(basis.orthogonality_residual() <= 1e-10);
}

TEST_CASE("orthonormal recurrence values match coefficient expansion") {
    discrete_measure mu({{-2.0, 0.2}, {-0.5, 0.7}, {0.3, 0.4}, {1.0, 0.8}, {2.5, 0.3}});
    ortho_basis basis(mu, 4);
    for (double x : {-1.7, 0.0, 0.4, 2.2}) {
        auto pi = basis.orthonormal_at(x);
        for (int k = 0; k <= 4; ++k) {
            auto coef = basis.orthonormal_coeffs(k);
            double v = 0.0;
            for (std::size_t i = coef.size(); i-- > 0;) v = v * x + coef[i];
            CHECK(pi[std::size_t(k)] == doctest::Approx(v).epsilon(1e-9));
        }
    }
}

TEST_CASE("discrete orthogonality against the measure") {
    rng g(7);
    std::vector<atom> atoms;
    for (int i = 0; i < 12; ++i) atoms.push_back({g.uniform(-4, 4), g.uniform(0.05, 1.0)});
    discrete_measure mu(atoms);
    ortho_basis basis(mu, 8);
    for (int j = 0; j <= 8; ++j)
        for (int k = j; k <= 8; ++k) {
            kahan s;
            for (const auto& a : mu.atoms()) {
                auto pi = basis.orthonormal_at(a.x);
                s.add(a.mass * pi[std::size_t(j)] * pi[std::size_t(k)]);
            }
            CHECK(s.value() == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
        }
}
