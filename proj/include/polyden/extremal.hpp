#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyden/measure.hpp"
#include "polyden/num.hpp"
#include "polyden/ortho.hpp"
#include "polyden/weight.hpp"

namespace polyden {

/// Real polynomial, coefficients ascending by degree; empty = zero polynomial.
struct poly_real {
    std::vector<double> coeffs;

    poly_real() = default;
    explicit poly_real(std::vector<double> c) : coeffs(std::move(c)) { trim(); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    }
    int degree() const { return int(coeffs.size()) - 1; } // -1 for zero polynomial

    double operator()(double x) const {
        double v = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
        return v;
    }
    cplx operator()(cplx z) const {
        cplx v = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
        return v;
    }

    static poly_real from_roots(const std::vector<double>& roots, double scale = 1.0);
};

/// Norm parameter: L_p(mu) for p in [1,inf) or the weighted sup norm
/// sup w(x)|p(x)| over the support (the alpha = * case).
struct norm_param {
    enum class kind { lp, supw } mode = kind::lp;
    double p = 2.0;

    static norm_param lp(double p_) { return {kind::lp, p_}; }
    static norm_param supw() { return {kind::supw, 1.0}; }

    bool is_lp() const { return mode == kind::lp; }
    bool is_l2() const { return mode == kind::lp && p == 2.0; }
    /// exponent of the (2.1.5) tilts associated with this norm
    double tilt_exponent() const { return mode == kind::lp ? p : 1.0; }
};

enum class solve_status { ok, unbounded, non_converged };

struct extremal_result {
    double value = 0.0;
    poly_real minimizer;
    int iters = 0;
    double residual = 0.0;
    std::optional<std::pair<double, double>> sandwich; // (lower, upper) for M-quantities
    solve_status status = solve_status::ok;
};

/// ||p||_{L_alpha(mu)} — in supw mode the atom masses are the weight values.
double poly_norm(const discrete_measure& mu, const norm_param& norm, const poly_real& p);

/// rho_n of (2.1.2): inf ||p|| over real p, deg <= n, |p(z)| = 1.
extremal_result rho_n(const discrete_measure& mu, const norm_param& norm, cplx z, int n);

/// M_n of (2.1.1).  Exact kernel value for L_2; exact 1/rho for real z;
/// otherwise the (2.1.4) sandwich with value = lower bound.
extremal_result M_n(const discrete_measure& mu, const norm_param& norm, cplx z, int n);

enum class limit_verdict { converged_to_zero, plateau, undecided };

struct rho_limit_result {
    std::vector<double> rho;  // rho_0 .. rho_n_max
    double limit_estimate = 0.0;
    limit_verdict verdict = limit_verdict::undecided;
    int plateau_window = 0;
    double zero_floor = 0.0;
};

/// Degree sweep of rho_n on the tilted measure at z (Eq. (2.1.3) limits).
rho_limit_result rho_limit(const discrete_measure& mu, const norm_param& norm, tilt_mode mode,
                           cplx z, int n_max, double stall_tol, double zero_floor = 1e-9);

struct monotone_report {
    std::vector<double> values; // M_n(mu, a + i y) per y
    bool nondecreasing = true;
    bool even_in_y = true;
};

/// Proposition 2.3 check: y -> M_n(mu, a+iy) nondecreasing and even.
/// Throws AssertionFailure with the offending pair when violated.
monotone_report check_monotone_y(const discrete_measure& mu, const norm_param& norm, double a,
                                 const std::vector<double>& ys, int n);

struct tilt_inequality_report {
    double rho_alpha2_nm1 = 0.0, rho_alpha_n = 0.0; // rho_{n-1}(mu_a^(2), z) >= |z| rho_n(mu_a, z)
    double M_alpha_n = 0.0, M_alpha2_nm1 = 0.0;     // M_n(mu_a, z) >= |z| M_{n-1}(mu_a^(2), z)
    bool holds = true;
};

/// Eq. (2.1.6) inequalities at z != 0, n >= 1.
tilt_inequality_report check_tilt_inequalities(const discrete_measure& mu, const norm_param& norm,
                                               cplx z, int n);

/// Best approximation: inf ||f - p||_{L_alpha(mu)} over deg <= n, with values
/// f_i given on the atoms (used by the Proposition 2.2 cross-check).
extremal_result best_approximation(const discrete_measure& mu, const norm_param& norm,
                                   const std::vector<double>& f_at_atoms, int n);

} // namespace polyden
