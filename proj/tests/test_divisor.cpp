#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polyden/divisor.hpp"

using namespace polyden;

namespace {

entire_fn sinc_data(int K) {
    std::vector<zero_entry> zeros;
    for (int k = 1; k <= K; ++k) {
        zeros.push_back({double(-k), 1});
        zeros.push_back({double(k), 1});
    }
    return entire_fn(0, 1.0, 0, 0.0, std::move(zeros), tail_model::power_law(0.0, 1.0));
}

entire_fn asym_data(int K, double a) {
    std::vector<zero_entry> zeros;
    for (int k = 1; k <= K; ++k) zeros.push_back({double(k), 1});
    for (int l = 1; l <= K; ++l) zeros.push_back({double(-2 * l), 1});
    return entire_fn(0, 1.0, 1, a, std::move(zeros), tail_model::power_law(0.0, 1.0));
}

} // namespace

TEST_CASE("partial sums S(n, m)") {
    auto sym = sinc_data(20);
    for (int n : {1, 5, 12}) CHECK(partial_sums_S(sym, n, n) == doctest::Approx(0.0).scale(1.0));

    std::vector<zero_entry> zeros;
    for (int k = 1; k <= 6; ++k) zeros.push_back({double(k), 1});
    for (int l = 1; l <= 6; ++l) zeros.push_back({double(-2 * l), 1});
    entire_fn f(0, 1.0, 1, 0.0, std::move(zeros), tail_model::complete());
    CHECK(partial_sums_S(f, 2, 1) == doctest::Approx(-(1.0 + 0.5) + 0.5));

    entire_fn g(0, 1.0, 1, 0.3, {{1.0, 1}, {-1.0, 1}}, tail_model::complete());
    CHECK(partial_sums_S(g, 0, 0) == doctest::Approx(0.3));

    CHECK_THROWS_AS(partial_sums_S(g, 5, 0), error);
}

TEST_CASE("sinc divisor: symmetric case, N = 10") {
    auto f = sinc_data(2000);
    auto d = build_balanced_divisor(f, 10);
    CHECK(d.p_N == 9);
    CHECK(d.q_N == 9);
    CHECK(d.S_value == doctest::Approx(0.0).scale(1.0));
    CHECK(d.case_taken == balanced_divisor::sweep::balanced);

    auto v = verify_divisor(d, f, 400);
    CHECK(v.min_ratio >= 1.0);
    CHECK(v.min_deriv_ratio >= 1.0);

    // grid check against the closed form sin(pi x)/(pi x)
    const double inv_e = std::exp(-1.0);
    for (int i = 0; i <= 100; ++i) {
        double x = -9.0 + 18.0 * i / 100.0;
        double Pval = std::abs(std::exp(d.P.eval_log(cplx(x, 0.0), 1e6)));
        double fx = x == 0.0 ? 1.0 : std::abs(std::sin(M_PI * x) / (M_PI * x));
        CHECK(Pval >= inv_e * fx * 0.995);
    }
}

TEST_CASE("uniform convergence of P_N toward f") {
    auto f = sinc_data(2000);
    double prev = 1e300;
    for (int N : {5, 10, 20}) {
        auto d = build_balanced_divisor(f, N);
        auto v = verify_divisor(d, f, 200);
        CHECK(v.max_diff_on_disk < prev);
        prev = v.max_diff_on_disk;
    }
}

TEST_CASE("asymmetric corpus engages the sweep and brackets zero") {
    auto f = asym_data(3000, 0.0);
    for (int N : {5, 10, 20}) {
        auto d = build_balanced_divisor(f, N);
        CHECK(d.case_taken == balanced_divisor::sweep::negative);
        REQUIRE(d.phi_bracket.has_value());
        auto [before, after] = *d.phi_bracket;
        CHECK(before < 0.0);
        CHECK(after >= 0.0);
        // the final S is within one reciprocal zero of 0
        double last_neg = 2.0 * d.q_N;
        CHECK(std::abs(d.S_value) <= 1.0 / last_neg + 1e-12);
        verify_divisor(d, f, 400); // throws on any (3.3.11) violation
    }

    // positive-side sweep with a positive balance value
    auto g = asym_data(3000, 2.5);
    auto d5 = build_balanced_divisor(g, 5);
    CHECK(d5.case_taken == balanced_divisor::sweep::positive);
    REQUIRE(d5.phi_bracket.has_value());
    CHECK(d5.phi_bracket->first > 0.0);
    CHECK(d5.phi_bracket->second <= 0.0);
}

TEST_CASE("polynomial data: P_N recovers f exactly") {
    entire_fn f(0, 2.0, 0, 0.0, {{-1.0, 1}, {1.0, 1}}, tail_model::complete());
    auto d = build_balanced_divisor(f, 10);
    CHECK(d.p_N == 1);
    CHECK(d.q_N == 1);
    auto v = verify_divisor(d, f, 100);
    CHECK(v.min_ratio >= std::exp(1.0) * 0.999); // ratio is exactly e * (1/e)^{-1}... P = f
    CHECK(v.max_diff_on_disk <= 1e-12);

    // one-sided polynomial
    entire_fn g(0, 1.0, 0, 0.0, {{1.0, 1}, {2.0, 1}, {4.0, 1}}, tail_model::complete());
    auto dg = build_balanced_divisor(g, 10);
    CHECK(dg.case_taken == balanced_divisor::sweep::one_sided);
    CHECK(dg.p_N == 3);
}

TEST_CASE("truncated data without coverage raises InsufficientZeros") {
    auto f = sinc_data(8);
    CHECK_THROWS_AS(build_balanced_divisor(f, 10), error);
}

TEST_CASE("an unbalanced selection is caught by the verifier") {
    auto f = sinc_data(2000);
    auto d = build_balanced_divisor(f, 10);
    // inflate the positive side by 5 zeros: the (3.3.11b) lower bound breaks
    std::vector<zero_entry> zeros = d.P.zeros();
    for (int k = 10; k <= 14; ++k) zeros.push_back({double(k), 1});
    balanced_divisor bad = d;
    bad.P = entire_fn(0, 1.0, 0, 0.0, std::move(zeros), tail_model::complete());
    bad.p_N += 5;
    CHECK_THROWS_AS(verify_divisor(bad, f, 400), error);
}

TEST_CASE("perturbation plan constants (4.2.10) / (4.2.14) / (4.2.17)") {
    std::vector<zero_entry> zeros;
    for (int k = 1; k <= 100; ++k) {
        zeros.push_back({double(-k), 1});
        zeros.push_back({double(k), 1});
    }
    entire_fn B(0, 1.0, 0, 0.0, std::move(zeros), tail_model::complete());
    auto plan = make_perturbation_plan(B);
    // integer zeros: unit gaps between distinct magnitudes
    for (std::size_t k = 0; k < plan.rho.size(); ++k) CHECK(plan.rho[k] == 1.0);
    for (std::size_t k = 0; k < plan.delta.size(); ++k) {
        double ak = B.zeros()[B.by_abs()[k]].x;
        CHECK(plan.delta[k] <= 1.0 / (4.0 * (1.0 + ak * ak)) + 1e-15);
        CHECK(plan.delta[k] > 0.0);
    }
    // C = 8 exp(2 sum_{k<=100} 1/(1+k^2)) by the partial-sum oracle
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) s += 2.0 / (1.0 + k * k);
    CHECK(plan.C == doctest::Approx(8.0 * std::exp(s)).epsilon(1e-12));

    entire_fn with0(1, 1.0, 0, 0.0, {{1.0, 1}}, tail_model::complete());
    CHECK_THROWS_AS(make_perturbation_plan(with0), error);
}

TEST_CASE("perturb and compare") {
    std::vector<zero_entry> zeros;
    for (int k = 1; k <= 50; ++k) {
        zeros.push_back({double(-k), 1});
        zeros.push_back({double(k), 1});
    }
    entire_fn B(0, 1.0, 0, 0.0, std::move(zeros), tail_model::complete());
    auto plan = make_perturbation_plan(B);

    // zero perturbation: D = B, C >= 8 > 1
    std::vector<double> same;
    for (std::size_t k : B.by_abs()) same.push_back(B.zeros()[k].x);
    auto rep = perturb_and_compare(B, plan, same);
    CHECK(rep.holds);
    CHECK(rep.max_log_ratio == doctest::Approx(0.0).scale(1.0));

    // property test: random budget-respecting perturbations all hold
    rng g(97);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> b;
        for (std::size_t k = 0; k < B.by_abs().size(); ++k) {
            double a = B.zeros()[B.by_abs()[k]].x;
            b.push_back(a + plan.delta[k] * g.uniform(-1.0, 1.0));
        }
        CHECK(perturb_and_compare(B, plan, b).holds);
    }

    // a budget violation is reported as such
    std::vector<double> bad = same;
    bad[3] += plan.delta[3] * 40.0;
    CHECK_THROWS_AS(perturb_and_compare(B, plan, bad), error);
}
