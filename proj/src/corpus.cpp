#include "polyden/corpus.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <sstream>

#include "polyden/bernstein.hpp"
#include "polyden/density.hpp"
#include "polyden/divisor.hpp"
#include "polyden/entire.hpp"
#include "polyden/extremal.hpp"
#include "polyden/family.hpp"

namespace polyden {

namespace {

discrete_measure random_measure(rng& g, int min_atoms = 2, int max_atoms = 8) {
    int n = min_atoms + int(g.below(std::uint64_t(max_atoms - min_atoms + 1)));
    std::vector<atom> atoms;
    while (int(atoms.size()) < n) {
        double x = g.uniform(-3.0, 3.0);
        bool close = false;
        for (const auto& a : atoms) close = close || std::abs(a.x - x) < 1e-2;
        if (!close) atoms.push_back({x, g.uniform(0.1, 1.0)});
    }
    return discrete_measure(std::move(atoms));
}

/// independent route for rho_n at z = 0, L2: least squares on raw monomials
double brute_rho2_at0(const discrete_measure& mu, int n) {
    const auto& atoms = mu.atoms();
    Eigen::Index nA = Eigen::Index(atoms.size());
    Eigen::VectorXd sw(nA), base(nA);
    Eigen::MatrixXd B(nA, n);
    for (Eigen::Index i = 0; i < nA; ++i) {
        sw[i] = std::sqrt(atoms[std::size_t(i)].mass);
        base[i] = sw[i];
        double xp = 1.0;
        for (int jc = 0; jc < n; ++jc) {
            xp *= atoms[std::size_t(i)].x;
            B(i, jc) = sw[i] * xp;
        }
    }
    if (n == 0) return base.norm();
    Eigen::VectorXd c = B.colPivHouseholderQr().solve(-base);
    return (base + B * c).norm();
}

entire_fn sinc_data(int K, double density_coeff = 1.0) {
    std::vector<zero_entry> zeros;
    zeros.reserve(std::size_t(2 * K));
    for (int k = 1; k <= K; ++k) {
        zeros.push_back({double(-k), 1});
        zeros.push_back({double(k), 1});
    }
    return entire_fn(0, 1.0, 0, 0.0, std::move(zeros),
                     tail_model::power_law(0.0, density_coeff));
}

discrete_measure lognormal_measure(int nodes) {
    const double s2pi = std::sqrt(2.0 * M_PI);
    return from_quadrature(
        [&](double x) { return std::exp(-0.5 * std::log(x) * std::log(x)) / (x * s2pi); },
        1e-3, 50.0, nodes);
}

discrete_measure hermite_like_measure(int nodes) {
    return from_quadrature([](double x) { return std::exp(-x * x); }, -8.0, 8.0, nodes);
}

struct timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

criterion_result c1_kernel_vs_brute(std::uint64_t seed) {
    criterion_result r{1, "kernel rho vs brute-force convex minimization (L2, z=0)", false, "", 0};
    rng g(seed ^ 0xc1);
    int checked = 0, failed = 0;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        auto mu = random_measure(g);
        int n_hi = std::min(6, int(mu.size()) - 1);
        for (int n = 0; n <= n_hi; ++n) {
            double kernel = rho_n(mu, norm_param::lp(2.0), 0.0, n).value;
            double brute = brute_rho2_at0(mu, n);
            double rel = std::abs(kernel - brute) / std::max(brute, 1e-300);
            worst = std::max(worst, rel);
            ++checked;
            if (rel > 1e-8) ++failed;
        }
    }
    r.passed = failed == 0;
    std::ostringstream os;
    os << checked << " comparisons, worst relative gap " << worst;
    r.details = os.str();
    return r;
}

criterion_result c2_sandwich(std::uint64_t seed) {
    criterion_result r{2, "sandwich 1/rho <= M <= 2/rho for p in {1,2,3} and sup-norm", false,
                       "", 0};
    rng g(seed ^ 0xc2);
    std::vector<norm_param> norms = {norm_param::lp(1.0), norm_param::lp(2.0),
                                     norm_param::lp(3.0), norm_param::supw()};
    std::vector<cplx> zs = {0.0, 0.5, cplx(0.0, 1.0)};
    int checked = 0, violations = 0;
    for (int t = 0; t < 50; ++t) {
        auto mu = random_measure(g);
        int n = std::min(4, int(mu.size()) - 1);
        for (const auto& nm : norms)
            for (cplx z : zs) {
                double rho = rho_n(mu, nm, z, n).value;
                auto M = M_n(mu, nm, z, n);
                if (M.status == solve_status::unbounded || rho <= 0.0) continue;
                ++checked;
                double lo = 1.0 / rho, hi = 2.0 / rho;
                if (M.value < lo * (1.0 - 1e-9) || M.value > hi * (1.0 + 1e-9)) ++violations;
            }
    }
    r.passed = violations == 0 && checked > 0;
    r.details = std::to_string(checked) + " triples checked, " + std::to_string(violations) +
                " violations";
    return r;
}

criterion_result c3_finite_support(std::uint64_t seed) {
    criterion_result r{3, "finite support: rho_N = 0 off the support", false, "", 0};
    rng g(seed ^ 0xc3);
    std::vector<norm_param> norms = {norm_param::lp(2.0), norm_param::lp(1.5),
                                     norm_param::supw()};
    int checked = 0;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        auto mu = random_measure(g);
        int N = int(mu.size());
        std::vector<cplx> zs = {3.7, cplx(0.0, 1.0), cplx(0.25, 0.0)};
        for (const auto& nm : norms)
            for (cplx z : zs) {
                if (z.imag() == 0.0 && mu.has_atom_at(z.real(), 1e-6)) continue;
                double v = rho_n(mu, nm, z, N).value;
                worst = std::max(worst, v);
                ++checked;
            }
    }
    r.passed = worst <= 1e-10;
    std::ostringstream os;
    os << checked << " evaluations, max rho_N = " << worst;
    r.details = os.str();
    return r;
}

criterion_result c4_hamburger_contrast(std::uint64_t) {
    criterion_result r{4, "Hamburger criterion: log-normal plateau vs Hermite decay", false, "",
                       0};
    auto logn = lognormal_measure(400);
    auto la = rho_limit(logn, norm_param::lp(2.0), tilt_mode::alpha, 0.0, 40, 0.01);
    auto la2 = rho_limit(logn, norm_param::lp(2.0), tilt_mode::alpha2, 0.0, 40, 0.01);
    bool logn_ok =
        la.verdict == limit_verdict::plateau && la2.verdict == limit_verdict::plateau;

    auto herm = hermite_like_measure(400);
    auto ha = rho_limit(herm, norm_param::lp(2.0), tilt_mode::alpha, 0.0, 40, 0.01);
    double decay = ha.rho[10] / std::max(ha.rho[40], 1e-300);
    bool herm_ok = decay >= 5.0;

    r.passed = logn_ok && herm_ok;
    std::ostringstream os;
    os << "log-normal verdicts " << (logn_ok ? "PLATEAU/PLATEAU" : "not both plateau")
       << " (tails " << la.rho[40] << ", " << la2.rho[40] << "); Hermite decay rho10/rho40 = "
       << decay;
    r.details = os.str();
    return r;
}

criterion_result c5_delta_identity(std::uint64_t seed) {
    criterion_result r{5, "Delta_f^2 == 1 for sinc zero data", false, "", 0};
    rng g(seed ^ 0xc5);
    auto f = sinc_data(10000);
    int checked = 0, failed = 0;
    double worst = 0.0;
    while (checked < 20) {
        double radius = 5.0 * std::sqrt(g.u01());
        double phi = g.uniform(0.0, 2.0 * M_PI);
        cplx z = std::polar(radius, phi);
        if (std::abs(z.real() - std::round(z.real())) < 0.05 && std::abs(z.imag()) < 0.05)
            continue;
        if (std::abs(z) < 0.05) continue;
        auto d = delta_fp(f, 2, z, f.zeros().size());
        double err = std::abs(d.value - 1.0);
        double budget = std::max(1e-6, d.tail_bound.value_or(0.0));
        worst = std::max(worst, err);
        if (err > budget) ++failed;
        ++checked;
    }
    r.passed = failed == 0;
    std::ostringstream os;
    os << checked << " points, worst |Delta - 1| = " << worst;
    r.details = os.str();
    return r;
}

criterion_result c6_partial_fractions(std::uint64_t seed) {
    criterion_result r{6, "partial-fraction identity: polynomials exact, lacunary at z=1", false,
                       "", 0};
    rng g(seed ^ 0xc6);
    double worst_poly = 0.0;
    for (int t = 0; t < 20; ++t) {
        int deg = 1 + int(g.below(5));
        std::vector<zero_entry> zeros;
        while (int(zeros.size()) < deg) {
            double x = g.uniform(-4.0, 4.0);
            if (std::abs(x) < 0.1) continue;
            bool close = false;
            for (const auto& ze : zeros) close = close || std::abs(ze.x - x) < 1e-2;
            if (!close) zeros.push_back({x, 1});
        }
        entire_fn P(0, 1.0, 0, 0.0, std::move(zeros), tail_model::complete());
        std::vector<cplx> zl;
        while (zl.size() < 3) {
            cplx z(g.uniform(-5.0, 5.0), g.uniform(-2.0, 2.0));
            bool ok = true;
            for (const auto& ze : P.zeros()) ok = ok && std::abs(z - ze.x) > 0.1;
            if (ok) zl.push_back(z);
        }
        auto rep = check_hamburger_identity(P, zl, P.zeros().size());

        // independent oracle: expanded coefficients, Horner evaluation
        std::vector<double> roots;
        for (const auto& ze : P.zeros()) roots.push_back(ze.x);
        std::vector<double> coef{1.0};
        for (double rt : roots) {
            std::vector<double> nx(coef.size() + 1, 0.0);
            for (std::size_t i = 0; i < coef.size(); ++i) {
                nx[i + 1] += coef[i] / (-rt); // factor (1 - x/rt)
                nx[i] += coef[i];
            }
            coef = std::move(nx);
        }
        auto horner = [&](const std::vector<double>& cf, cplx z) {
            cplx v = 0.0;
            for (std::size_t i = cf.size(); i-- > 0;) v = v * z + cf[i];
            return v;
        };
        std::vector<double> dcoef(coef.size() - 1);
        for (std::size_t i = 1; i < coef.size(); ++i) dcoef[i - 1] = double(i) * coef[i];
        for (cplx z : zl) {
            cplx rhs = 0.0;
            for (double rt : roots) rhs += 1.0 / (horner(dcoef, rt) * (z - rt));
            double err = std::abs(1.0 / horner(coef, z) - rhs);
            worst_poly = std::max(worst_poly, err / std::max(std::abs(rhs), 1.0));
        }
        (void)rep;
    }

    std::vector<zero_entry> lac;
    for (int k = 1; k <= 30; ++k) {
        lac.push_back({-std::pow(2.0, k), 1});
        lac.push_back({std::pow(2.0, k), 1});
    }
    entire_fn L(0, 1.0, 0, 0.0, std::move(lac), tail_model::power_law(-1.0, 1.5));
    auto repL = check_hamburger_identity(L, {cplx(1.0, 0.0)}, L.zeros().size());
    double lac_err = repL.worst_err;

    r.passed = worst_poly <= 1e-10 && lac_err <= 1e-8;
    std::ostringstream os;
    os << "polynomial worst relative error " << worst_poly << ", lacunary error at z=1 "
       << lac_err;
    r.details = os.str();
    return r;
}

criterion_result c7_divisors(std::uint64_t) {
    criterion_result r{7, "balanced divisors: (3.3.11a,b,c) and uniform convergence", false, "",
                       0};
    std::ostringstream os;
    bool ok = true;

    auto run_suite = [&](const entire_fn& f, const char* name) {
        double prev = std::numeric_limits<double>::infinity();
        for (int N : {5, 10, 20}) {
            auto d = build_balanced_divisor(f, N);
            // (3.3.11a): every stored zero inside (-N, N) is selected
            for (const auto& ze : f.zeros())
                if (std::abs(ze.x) < N && d.P.find_zero(ze.x) == std::size_t(-1)) ok = false;
            if (d.phi_bracket) {
                auto [before, after] = *d.phi_bracket;
                if (!((before > 0.0 && after <= 0.0) || (before < 0.0 && after >= 0.0)))
                    ok = false;
            }
            auto v = verify_divisor(d, f, 400);
            if (!(v.max_diff_on_disk < prev)) ok = false;
            prev = v.max_diff_on_disk;
            os << name << " N=" << N << ": p=" << d.p_N << " q=" << d.q_N
               << " |S|=" << std::abs(d.S_value) << " diff2=" << v.max_diff_on_disk << "; ";
        }
    };

    run_suite(sinc_data(2000), "sinc");

    std::vector<zero_entry> az;
    for (int k = 1; k <= 3000; ++k) az.push_back({double(k), 1});
    for (int l = 1; l <= 3000; ++l) az.push_back({double(-2 * l), 1});
    entire_fn asym(0, 1.0, 1, 0.0, std::move(az), tail_model::power_law(0.0, 1.0));
    run_suite(asym, "asym");

    r.passed = ok;
    r.details = os.str();
    return r;
}

criterion_result c8_perturbation(std::uint64_t seed) {
    criterion_result r{8, "Lemma 4.3: 100 budget-respecting perturbations", false, "", 0};
    rng g(seed ^ 0xc8);
    std::vector<zero_entry> zeros;
    for (int k = 1; k <= 50; ++k) {
        zeros.push_back({double(-k), 1});
        zeros.push_back({double(k), 1});
    }
    entire_fn B(0, 1.0, 0, 0.0, std::move(zeros), tail_model::complete());
    auto plan = make_perturbation_plan(B);
    int held = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 100; ++t) {
        std::vector<double> b;
        for (std::size_t k = 0; k < B.by_abs().size(); ++k) {
            double a = B.zeros()[B.by_abs()[k]].x;
            b.push_back(a + plan.delta[k] * g.uniform(-1.0, 1.0));
        }
        auto rep = perturb_and_compare(B, plan, b); // throws on violation
        worst = std::max(worst, rep.max_log_ratio);
        ++held;
    }
    r.passed = held == 100;
    std::ostringstream os;
    os << "C = " << plan.C << ", worst |B'(a)|/|D'(b)| = " << std::exp(worst);
    r.details = os.str();
    return r;
}

criterion_result c9_normality_bound(std::uint64_t seed) {
    criterion_result r{9, "normal-family growth bound from Lemma 3.2 membership", false, "", 0};
    rng g(seed ^ 0xc9);
    lemma32_params prm{0.5, 1.0, 1.0, 6.0, 0.01};
    int accepted = 0, attempts = 0, violations = 0;
    while (accepted < 200 && attempts < 20000) {
        ++attempts;
        int deg = 1 + int(g.below(6));
        std::vector<double> zs;
        while (int(zs.size()) < deg) {
            double x = (g.u01() < 0.5 ? -1.0 : 1.0) * g.uniform(0.5, 8.0);
            bool close = false;
            for (double z0 : zs) close = close || std::abs(z0 - x) < 0.1;
            if (!close) zs.push_back(x);
        }
        star_poly P(zs);
        if (!member_lemma32(P, prm)) continue;
        ++accepted;
        auto [l1, l2] = lambda_functionals(P);
        for (int t = 0; t < 25; ++t) {
            cplx z = std::polar(3.0 * std::sqrt(g.u01()), g.uniform(0.0, 2.0 * M_PI));
            double lhs = std::abs(P(z));
            double rhs = std::exp(l1 * std::abs(z) + 0.5 * l2 * std::abs(z) * std::abs(z));
            if (lhs > rhs * (1.0 + 1e-9)) ++violations;
        }
    }
    r.passed = accepted == 200 && violations == 0;
    r.details = std::to_string(accepted) + " members (" + std::to_string(attempts) +
                " attempts), " + std::to_string(violations) + " bound violations";
    return r;
}

criterion_result c10_lemma41(std::uint64_t seed) {
    criterion_result r{10, "Lemma 4.1 objective: LOCAL vs BRUTE, growth trend", false, "", 0};
    auto make_weight = [](double s) {
        std::vector<double> xs, ws;
        for (int i = 0; i <= 64; ++i) {
            double x = -8.0 + 16.0 * i / 64;
            xs.push_back(x);
            ws.push_back(std::exp(-std::pow(std::abs(x), s)));
        }
        return grid_weight(xs, ws);
    };

    bool ok = true;
    double worst_gap = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
        double s = (inst % 3 == 0) ? 1.0 : (inst % 3 == 1 ? 1.5 : 2.0);
        double C = 1.0 + (inst % 2);
        grid_weight w = make_weight(s);
        theta_spec theta{C / 2.0, C, 1.0};
        for (int N : {1, 2}) {
            auto vb = lemma41_minimize(N, w, theta, 1, search_strategy::brute);
            auto vl =
                lemma41_minimize(N, w, theta, 1, search_strategy::local, seed + inst * 7 + N);
            double gap = std::abs(vl.value - vb.value);
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-6) ok = false;
        }
    }

    grid_weight w1 = make_weight(1.0);
    theta_spec theta{0.5, 1.0, 1.0};
    std::vector<double> trend;
    for (int N = 1; N <= 6; ++N) {
        auto v = N <= 3 ? lemma41_minimize(N, w1, theta, 1, search_strategy::brute)
                        : lemma41_minimize(N, w1, theta, 1, search_strategy::local, seed + N);
        trend.push_back(v.value);
    }
    bool nondecreasing = true;
    for (std::size_t i = 1; i < trend.size(); ++i)
        if (trend[i] < trend[i - 1] * (1.0 - 1e-9)) nondecreasing = false;
    if (!nondecreasing) ok = false;

    r.passed = ok;
    std::ostringstream os;
    os << "worst LOCAL-BRUTE gap " << worst_gap << "; e^{-|x|} trend";
    for (double v : trend) os << " " << v;
    r.details = os.str();
    return r;
}

criterion_result c11_representation(std::uint64_t seed) {
    criterion_result r{11, "representation round trip and perturbation detection", false, "", 0};
    rng g(seed ^ 0xcb);
    int round_trips = 0, detections = 0;
    for (int t = 0; t < 50; ++t) {
        int n = 3 + int(g.below(6));
        std::vector<atom> nu_atoms;
        std::vector<double> xs, ws;
        while (int(nu_atoms.size()) < n) {
            double x = g.uniform(-3.0, 3.0);
            bool close = false;
            for (const auto& a : nu_atoms) close = close || std::abs(a.x - x) < 1e-2;
            if (!close) nu_atoms.push_back({x, g.uniform(0.1, 2.0)});
        }
        std::sort(nu_atoms.begin(), nu_atoms.end(),
                  [](const atom& a, const atom& b) { return a.x < b.x; });
        for (const auto& a : nu_atoms) {
            xs.push_back(a.x);
            ws.push_back(g.uniform(0.05, 1.0));
        }
        representation_pair pair{grid_weight(xs, ws), discrete_measure(nu_atoms),
                                 double(1 + int(g.below(3)))};
        auto mu = build_measure(pair);
        if (verify_representation(mu, pair).ok) ++round_trips;

        auto atoms = mu.atoms();
        std::size_t idx = std::size_t(g.below(atoms.size()));
        atoms[idx].mass *= 1.0 + 1e-6;
        discrete_measure mu2(atoms);
        if (!verify_representation(mu2, pair).ok) ++detections;
    }
    r.passed = round_trips == 50 && detections == 50;
    r.details = std::to_string(round_trips) + "/50 round trips exact, " +
                std::to_string(detections) + "/50 perturbations detected";
    return r;
}

} // namespace

criterion_result run_criterion(int id, std::uint64_t seed) {
    timer t;
    criterion_result r;
    switch (id) {
    case 1: r = c1_kernel_vs_brute(seed); break;
    case 2: r = c2_sandwich(seed); break;
    case 3: r = c3_finite_support(seed); break;
    case 4: r = c4_hamburger_contrast(seed); break;
    case 5: r = c5_delta_identity(seed); break;
    case 6: r = c6_partial_fractions(seed); break;
    case 7: r = c7_divisors(seed); break;
    case 8: r = c8_perturbation(seed); break;
    case 9: r = c9_normality_bound(seed); break;
    case 10: r = c10_lemma41(seed); break;
    case 11: r = c11_representation(seed); break;
    default: fail(errc::validation, "criterion id must be 1..11");
    }
    r.seconds = t.seconds();
    return r;
}

std::vector<criterion_result> run_corpus(std::uint64_t seed) {
    std::vector<criterion_result> out;
    for (int id = 1; id <= 11; ++id) out.push_back(run_criterion(id, seed));
    return out;
}

} // namespace polyden
