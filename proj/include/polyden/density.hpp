#pragma once

#include <map>
#include <string>
#include <vector>

#include "polyden/extremal.hpp"

namespace polyden {

enum class density_verdict { dense, not_dense, undecided };

inline const char* density_verdict_name(density_verdict v) {
    switch (v) {
    case density_verdict::dense: return "DENSE";
    case density_verdict::not_dense: return "NOT_DENSE";
    case density_verdict::undecided: return "UNDECIDED";
    }
    return "?";
}

/// All verdicts are grid-sense: a finite measure is always determinate, the
/// reported signal is the plateau-vs-decay contrast of the criterion.
struct density_report {
    std::vector<double> rho_alpha_seq;
    std::vector<double> rho_alpha2_seq;
    density_verdict verdict = density_verdict::undecided;
    std::map<std::string, double> diagnostics;
};

/// Theorem 2.1 probe: rho_limit on both (2.1.5) tilts at z = 0.
/// NOT_DENSE only when both sequences plateau; DENSE only when at least one
/// reaches the zero floor; UNDECIDED otherwise.
density_report hamburger_verdict(const discrete_measure& mu, const norm_param& norm, int n_max,
                                 double stall_tol);

/// The (2.2.2) criterion: same decision at p = 2, kernel sums reported.
density_report riesz_p2(const discrete_measure& mu, int n_max, double stall_tol);

struct crosscheck_report {
    std::vector<double> err1_seq; // best approximation errors of 1/(1+x^2)
    std::vector<double> err2_seq; // and of x/(1+x^2)
    limit_verdict trend1 = limit_verdict::undecided;
    limit_verdict trend2 = limit_verdict::undecided;
    density_verdict hamburger = density_verdict::undecided;
    bool equivalent = true; // errors -> 0 iff DENSE, on decided instances
};

/// Proposition 2.2 (2.2.1g) cross-check against the Theorem 2.1 verdict.
crosscheck_report prop22_crosscheck(const discrete_measure& mu, const norm_param& norm, int n_max,
                                    double stall_tol);

struct prop31_report {
    bool applicable = false; // vacuous unless the verdict is NOT_DENSE
    std::vector<double> ys;
    std::vector<double> ratios; // log M_n(mu, iy) / y
    bool decreasing_trend = false;
};

/// Proposition 3.1 growth diagnostic: log M_n(mu, iy)/y should decay along
/// the y-ladder for a measure where polynomials are not dense.
prop31_report prop31_diagnostic(const discrete_measure& mu, const norm_param& norm,
                                const std::vector<double>& ys, int n,
                                density_verdict verdict = density_verdict::not_dense);

} // namespace polyden
