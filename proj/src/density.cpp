#include "polyden/density.hpp"

#include <cmath>

namespace polyden {

namespace {

density_verdict combine(limit_verdict a, limit_verdict a2) {
    if (a == limit_verdict::converged_to_zero || a2 == limit_verdict::converged_to_zero)
        return density_verdict::dense;
    if (a == limit_verdict::plateau && a2 == limit_verdict::plateau)
        return density_verdict::not_dense;
    return density_verdict::undecided;
}

limit_verdict classify_errors(const std::vector<double>& errs, double stall_tol,
                              double zero_floor) {
    if (errs.empty()) return limit_verdict::undecided;
    if (errs.back() < zero_floor) return limit_verdict::converged_to_zero;
    int n_max = int(errs.size()) - 1;
    int w = (n_max + 3) / 4;
    if (n_max >= w && w > 0) {
        double head = errs[std::size_t(n_max - w)];
        double tail = errs.back();
        if ((head - tail) / std::max(head, 1e-300) < stall_tol) return limit_verdict::plateau;
    }
    return limit_verdict::undecided;
}

} // namespace

density_report hamburger_verdict(const discrete_measure& mu, const norm_param& norm, int n_max,
                                 double stall_tol) {
    density_report rep;
    rep.diagnostics["n_max"] = double(n_max);
    rep.diagnostics["stall_tol"] = stall_tol;
    rep.diagnostics["atom_count"] = double(mu.size());
    try {
        auto ra = rho_limit(mu, norm, tilt_mode::alpha, 0.0, n_max, stall_tol);
        auto ra2 = rho_limit(mu, norm, tilt_mode::alpha2, 0.0, n_max, stall_tol);
        rep.rho_alpha_seq = ra.rho;
        rep.rho_alpha2_seq = ra2.rho;
        rep.verdict = combine(ra.verdict, ra2.verdict);
        rep.diagnostics["rho_alpha_limit"] = ra.limit_estimate;
        rep.diagnostics["rho_alpha2_limit"] = ra2.limit_estimate;
        rep.diagnostics["degree_over_atoms"] = double(n_max) / double(mu.size());
    } catch (const error& e) {
        if (e.code() != errc::empty_measure) throw;
        // single atom at the origin: the alpha2 tilt has no probe left
        rep.verdict = density_verdict::undecided;
        rep.diagnostics["alpha2_tilt_empty"] = 1.0;
    }
    return rep;
}

density_report riesz_p2(const discrete_measure& mu, int n_max, double stall_tol) {
    auto rep = hamburger_verdict(mu, norm_param::lp(2.0), n_max, stall_tol);
    // kernel form of the same criterion: K_n(0,0) = 1/rho_n^2
    if (!rep.rho_alpha_seq.empty() && rep.rho_alpha_seq.back() > 0.0)
        rep.diagnostics["kernel_alpha_at0"] =
            1.0 / (rep.rho_alpha_seq.back() * rep.rho_alpha_seq.back());
    if (!rep.rho_alpha2_seq.empty() && rep.rho_alpha2_seq.back() > 0.0)
        rep.diagnostics["kernel_alpha2_at0"] =
            1.0 / (rep.rho_alpha2_seq.back() * rep.rho_alpha2_seq.back());
    return rep;
}

crosscheck_report prop22_crosscheck(const discrete_measure& mu, const norm_param& norm, int n_max,
                                    double stall_tol) {
    if (n_max < 2) fail(errc::validation, "prop22 crosscheck needs n_max >= 2");
    crosscheck_report rep;
    const auto& atoms = mu.atoms();
    std::vector<double> f1(atoms.size()), f2(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        double x = atoms[i].x;
        f1[i] = 1.0 / (1.0 + x * x);
        f2[i] = x / (1.0 + x * x);
    }
    for (int n = 0; n <= n_max; ++n) {
        rep.err1_seq.push_back(best_approximation(mu, norm, f1, n).value);
        rep.err2_seq.push_back(best_approximation(mu, norm, f2, n).value);
    }
    const double zero_floor = 1e-9;
    rep.trend1 = classify_errors(rep.err1_seq, stall_tol, zero_floor);
    rep.trend2 = classify_errors(rep.err2_seq, stall_tol, zero_floor);
    rep.hamburger = hamburger_verdict(mu, norm, n_max, stall_tol).verdict;

    bool errors_vanish = rep.trend1 == limit_verdict::converged_to_zero &&
                         rep.trend2 == limit_verdict::converged_to_zero;
    bool errors_stall =
        rep.trend1 == limit_verdict::plateau || rep.trend2 == limit_verdict::plateau;
    if (rep.hamburger == density_verdict::dense && errors_stall) rep.equivalent = false;
    if (rep.hamburger == density_verdict::not_dense && errors_vanish) rep.equivalent = false;
    if (!rep.equivalent)
        fail(errc::assertion_failure,
             "Proposition 2.2 equivalence violated: verdict " +
                 std::string(density_verdict_name(rep.hamburger)) + " but approximation errors " +
                 (errors_vanish ? "vanish" : "stall"));
    return rep;
}

prop31_report prop31_diagnostic(const discrete_measure& mu, const norm_param& norm,
                                const std::vector<double>& ys, int n, density_verdict verdict) {
    prop31_report rep;
    rep.applicable = verdict == density_verdict::not_dense;
    if (!rep.applicable) return rep;
    for (double y : ys) {
        if (!(y > 0.0)) fail(errc::validation, "prop31 ladder needs y > 0");
        double M = M_n(mu, norm, cplx(0.0, y), n).value;
        rep.ys.push_back(y);
        rep.ratios.push_back(std::log(M) / y);
    }
    rep.decreasing_trend = true;
    for (std::size_t i = 1; i < rep.ratios.size(); ++i)
        if (std::abs(rep.ratios[i]) > std::abs(rep.ratios[i - 1]) * 1.05 + 1e-12)
            rep.decreasing_trend = false;
    if (rep.ratios.size() >= 2 &&
        std::abs(rep.ratios.back()) > 0.8 * std::abs(rep.ratios.front()) + 1e-12)
        rep.decreasing_trend = false;
    return rep;
}

} // namespace polyden
