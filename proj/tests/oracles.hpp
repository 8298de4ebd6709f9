// Brute-force reference computations, kept independent of the library's
// solution paths: raw monomials + dense least squares for the L2 problems,
// coefficient grid scans with golden refinement for the others.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

#include "polyden/measure.hpp"

namespace oracle {

/// min ||p||_{L2(mu)} s.t. p(0) = 1, deg <= n, via monomial least squares
inline double rho2_at0(const polyden::discrete_measure& mu, int n) {
    const auto& atoms = mu.atoms();
    Eigen::Index nA = Eigen::Index(atoms.size());
    Eigen::VectorXd base(nA);
    Eigen::MatrixXd B(nA, n);
    for (Eigen::Index i = 0; i < nA; ++i) {
        double sw = std::sqrt(atoms[std::size_t(i)].mass);
        base[i] = sw;
        double xp = 1.0;
        for (int j = 0; j < n; ++j) {
            xp *= atoms[std::size_t(i)].x;
            B(i, j) = sw * xp;
        }
    }
    if (n == 0) return base.norm();
    Eigen::VectorXd c = B.colPivHouseholderQr().solve(-base);
    return (base + B * c).norm();
}

/// nested golden-section minimization of a smooth function of <= 2 variables
inline double golden1d(const std::function<double(double)>& f, double lo, double hi,
                       int iters = 120) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

/// min over real coefficients of ||1 + c1 x + ... + cn x^n||_{L_p(mu)} with
/// the normalization p(0)=1 built in; n <= 2, coarse grid + refinement
inline double rho_lp_at0(const polyden::discrete_measure& mu, double p, int n, double box = 8.0) {
    auto norm_of = [&](double c1, double c2) {
        double s = 0.0;
        for (const auto& a : mu.atoms()) {
            double v = 1.0 + c1 * a.x + c2 * a.x * a.x;
            s += a.mass * std::pow(std::abs(v), p);
        }
        return std::pow(s, 1.0 / p);
    };
    if (n == 0) return norm_of(0.0, 0.0);
    if (n == 1) {
        double best = 1e300;
        for (int i = 0; i <= 400; ++i) {
            double c1 = -box + 2 * box * i / 400.0;
            best = std::min(best, norm_of(c1, 0.0));
        }
        // refine around the best grid cell
        double c_best = 0.0;
        for (int i = 0; i <= 400; ++i) {
            double c1 = -box + 2 * box * i / 400.0;
            if (norm_of(c1, 0.0) == best) c_best = c1;
        }
        return golden1d([&](double c1) { return norm_of(c1, 0.0); },
                        c_best - box / 100, c_best + box / 100);
    }
    double best = 1e300, b1 = 0, b2 = 0;
    for (int i = 0; i <= 160; ++i)
        for (int j = 0; j <= 160; ++j) {
            double c1 = -box + 2 * box * i / 160.0, c2 = -box + 2 * box * j / 160.0;
            double v = norm_of(c1, c2);
            if (v < best) { best = v; b1 = c1; b2 = c2; }
        }
    // alternating 1-d refinements
    for (int round = 0; round < 12; ++round) {
        double step = box / 40.0 / std::pow(2.0, round);
        double v1 = golden1d([&](double c1) { return norm_of(c1, b2); }, b1 - step, b1 + step, 60);
        for (int i = 0; i <= 60; ++i) {
            double c1 = b1 - step + 2 * step * i / 60.0;
            if (norm_of(c1, b2) <= v1 + 1e-300) { b1 = c1; }
        }
        double v2 = golden1d([&](double c2) { return norm_of(b1, c2); }, b2 - step, b2 + step, 60);
        for (int j = 0; j <= 60; ++j) {
            double c2 = b2 - step + 2 * step * j / 60.0;
            if (norm_of(b1, c2) <= v2 + 1e-300) { b2 = c2; }
        }
        best = norm_of(b1, b2);
    }
    return best;
}

} // namespace oracle
