#include "polyden/extremal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyden {

namespace {

constexpr int kMaxIters = 500;
constexpr double kObjTol = 1e-12;
constexpr double kWeightFloor = 1e-14;
constexpr double kZeroValue = 1e-300;
constexpr int kMaxMaterializeDegree = 30;

using Eigen::MatrixXd;
using Eigen::VectorXd;

double lp_objective(const VectorXd& masses, const VectorXd& v, double p) {
    kahan s;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        s.add(masses[i] * std::pow(std::abs(v[i]), p));
    return s.value();
}

double sup_objective(const VectorXd& weights, const VectorXd& v) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, weights[i] * std::abs(v[i]));
    return m;
}

struct solve_out {
    VectorXd c;
    double value; // the norm itself (objective^{1/p} for Lp)
    int iters;
    double residual;
    solve_status status;
};

/// minimize || base + B c ||_{L_alpha(masses)} over c.
/// Lp: damped IRLS per the fixed controls; supw: Lawson reweighting.
solve_out minimize_norm(const VectorXd& masses, const VectorXd& base, const MatrixXd& B,
                        const norm_param& norm) {
    const Eigen::Index nA = base.size(), nc = B.cols();
    solve_out out;
    out.status = solve_status::ok;

    auto weighted_ls = [&](const VectorXd& W) -> VectorXd {
        if (nc == 0) return VectorXd(0);
        VectorXd sw = W.cwiseSqrt();
        MatrixXd A = sw.asDiagonal() * B;
        VectorXd rhs = -(sw.asDiagonal() * base);
        return A.colPivHouseholderQr().solve(rhs);
    };

    if (norm.is_lp() && norm.p == 2.0) {
        out.c = weighted_ls(masses);
        VectorXd v = nc == 0 ? base : VectorXd(base + B * out.c);
        out.value = std::sqrt(lp_objective(masses, v, 2.0));
        out.iters = 1;
        out.residual = 0.0;
        return out;
    }

    if (norm.is_lp()) {
        const double p = norm.p;
        VectorXd c = VectorXd::Zero(nc);
        VectorXd v = base;
        double J = lp_objective(masses, v, p);
        int it = 0;
        double rel_change = 0.0;
        for (; it < kMaxIters; ++it) {
            VectorXd W(nA);
            for (Eigen::Index i = 0; i < nA; ++i)
                W[i] = masses[i] * std::pow(std::max(std::abs(v[i]), kWeightFloor), p - 2.0);
            VectorXd c_ls = weighted_ls(W);
            // damp on objective increase
            double t = 1.0;
            VectorXd c_new = c_ls;
            double J_new = lp_objective(masses, VectorXd(base + B * c_new), p);
            while (J_new > J && t > 1e-8) {
                t *= 0.5;
                c_new = c + t * (c_ls - c);
                J_new = lp_objective(masses, VectorXd(base + B * c_new), p);
            }
            rel_change = std::abs(J - J_new) / std::max(J, kZeroValue);
            c = c_new;
            v = base + B * c;
            J = J_new;
            if (rel_change < kObjTol || J < kZeroValue) { ++it; break; }
        }
        out.c = c;
        out.value = std::pow(J, 1.0 / p);
        out.iters = it;
        out.residual = rel_change;
        out.status = (rel_change < kObjTol || out.value == 0.0 || J < kZeroValue)
                         ? solve_status::ok
                         : solve_status::non_converged;
        return out;
    }

    // Lawson for the weighted Chebyshev problem: rows pre-scaled by the weight
    VectorXd wB_base = masses.cwiseProduct(base);
    MatrixXd wB = masses.asDiagonal() * B;
    VectorXd omega = VectorXd::Constant(nA, 1.0 / double(nA));
    VectorXd c = VectorXd::Zero(nc);
    double best = std::numeric_limits<double>::infinity();
    VectorXd best_c = c;
    int it = 0;
    double rel_change = 1.0;
    for (; it < kMaxIters; ++it) {
        if (nc > 0) {
            VectorXd sw = omega.cwiseSqrt();
            MatrixXd A = sw.asDiagonal() * wB;
            VectorXd rhs = -(sw.asDiagonal() * wB_base);
            c = A.colPivHouseholderQr().solve(rhs);
        }
        VectorXd vt = wB_base;
        if (nc > 0) vt += wB * c;
        double obj = vt.cwiseAbs().maxCoeff();
        rel_change = std::abs(best - obj) / std::max(best, kZeroValue);
        if (obj < best) { best = obj; best_c = c; }
        if (rel_change < kObjTol || best < kZeroValue) { ++it; break; }
        for (Eigen::Index i = 0; i < nA; ++i) omega[i] *= std::abs(vt[i]) + kWeightFloor;
        double s = omega.sum();
        if (!(s > 0)) break;
        omega /= s;
    }
    out.c = best_c;
    out.value = best;
    out.iters = it;
    out.residual = rel_change;
    out.status = (rel_change < kObjTol || best < kZeroValue) ? solve_status::ok
                                                             : solve_status::non_converged;
    return out;
}

poly_real combine_pi(const ortho_basis& basis, const VectorXd& c) {
    // sum_k c_k pi_k as monomial coefficients
    std::vector<double> acc;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        if (c[k] == 0.0) continue;
        auto pk = basis.orthonormal_coeffs(int(k));
        if (pk.size() > acc.size()) acc.resize(pk.size(), 0.0);
        for (std::size_t i = 0; i < pk.size(); ++i) acc[i] += c[k] * pk[i];
    }
    return poly_real(std::move(acc));
}

poly_real multiply(const poly_real& f, const poly_real& g) {
    if (f.coeffs.empty() || g.coeffs.empty()) return poly_real{};
    std::vector<double> out(f.coeffs.size() + g.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) out[i + j] += f.coeffs[i] * g.coeffs[j];
    return poly_real(std::move(out));
}

poly_real add(const poly_real& f, const poly_real& g) {
    std::vector<double> out(std::max(f.coeffs.size(), g.coeffs.size()), 0.0);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) out[i] += f.coeffs[i];
    for (std::size_t i = 0; i < g.coeffs.size(); ++i) out[i] += g.coeffs[i];
    return poly_real(std::move(out));
}

double min_distance_to_support(const discrete_measure& mu, cplx z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& a : mu.atoms()) d = std::min(d, std::abs(z - cplx(a.x)));
    return d;
}

/// rho with the constraint p(z) = 1 at real z, degree n, kernel-free norms.
extremal_result rho_real_iterative(const discrete_measure& mu, const norm_param& norm, double z,
                                   int n) {
    const auto& atoms = mu.atoms();
    Eigen::Index nA = Eigen::Index(atoms.size());
    VectorXd masses(nA);
    for (Eigen::Index i = 0; i < nA; ++i) masses[i] = atoms[std::size_t(i)].mass;

    extremal_result res;
    if (n == 0) {
        res.value = poly_norm(mu, norm, poly_real({1.0}));
        res.minimizer = poly_real({1.0});
        return res;
    }
    ortho_basis basis(mu, n - 1);
    VectorXd base = VectorXd::Ones(nA);
    MatrixXd B(nA, n);
    for (Eigen::Index i = 0; i < nA; ++i) {
        auto pi = basis.orthonormal_at(atoms[std::size_t(i)].x);
        for (int k = 0; k < n; ++k) B(i, k) = (atoms[std::size_t(i)].x - z) * pi[std::size_t(k)];
    }
    auto sol = minimize_norm(masses, base, B, norm);
    res.value = sol.value;
    res.iters = sol.iters;
    res.residual = sol.residual;
    res.status = sol.status;
    if (n <= kMaxMaterializeDegree) {
        poly_real r = combine_pi(basis, sol.c);
        res.minimizer = add(poly_real({1.0}), multiply(poly_real({-z, 1.0}), r));
    }
    return res;
}

/// rho at complex z (Im z > 0): scan the unit-modulus constraint phase.
extremal_result rho_complex_iterative(const discrete_measure& mu, const norm_param& norm, cplx z,
                                      int n) {
    const auto& atoms = mu.atoms();
    Eigen::Index nA = Eigen::Index(atoms.size());
    VectorXd masses(nA);
    for (Eigen::Index i = 0; i < nA; ++i) masses[i] = atoms[std::size_t(i)].mass;
    double re = z.real(), im = z.imag();

    int nr = std::max(0, n - 1); // r degree <= n-2 -> nr columns in pi basis
    std::optional<ortho_basis> basis;
    if (nr > 0) basis.emplace(mu, std::max(0, n - 2));

    // s(x) = (x-re)^2 + im^2 vanishes at z, zbar; q0(x;theta) interpolates e^{i theta}
    auto solve_theta = [&](double theta) {
        VectorXd base(nA);
        for (Eigen::Index i = 0; i < nA; ++i) {
            double x = atoms[std::size_t(i)].x;
            base[i] = std::cos(theta) + (x - re) * std::sin(theta) / im;
        }
        MatrixXd B(nA, n >= 2 ? n - 1 : 0);
        if (n >= 2) {
            for (Eigen::Index i = 0; i < nA; ++i) {
                double x = atoms[std::size_t(i)].x;
                double s = (x - re) * (x - re) + im * im;
                auto pi = basis->orthonormal_at(x);
                for (int k = 0; k <= n - 2; ++k) B(i, k) = s * pi[std::size_t(k)];
            }
        }
        return minimize_norm(masses, base, B, norm);
    };

    // 64-point grid, then golden-section refinement around the best phase
    const int grid = 64;
    double best_theta = 0.0, best_val = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
        double theta = 2.0 * M_PI * j / grid;
        auto s = solve_theta(theta);
        if (s.value < best_val) { best_val = s.value; best_theta = theta; }
    }
    double lo = best_theta - 2.0 * M_PI / grid, hi = best_theta + 2.0 * M_PI / grid;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = solve_theta(x1).value, f2 = solve_theta(x2).value;
    for (int it = 0; it < 48; ++it) {
        if (f1 <= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = solve_theta(x1).value;
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = solve_theta(x2).value;
        }
    }
    double theta = f1 <= f2 ? x1 : x2;
    auto sol = solve_theta(theta);

    extremal_result res;
    res.value = sol.value;
    res.iters = sol.iters;
    res.residual = sol.residual;
    res.status = sol.status;
    if (n <= kMaxMaterializeDegree) {
        poly_real q0({std::cos(theta) - re * std::sin(theta) / im, std::sin(theta) / im});
        res.minimizer = q0;
        if (n >= 2) {
            poly_real s({re * re + im * im, -2.0 * re, 1.0});
            res.minimizer = add(q0, multiply(s, combine_pi(*basis, sol.c)));
        }
    }
    return res;
}

} // namespace

poly_real poly_real::from_roots(const std::vector<double>& roots, double scale) {
    std::vector<double> c{scale};
    for (double r : roots) {
        std::vector<double> nx(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            nx[i + 1] += c[i];
            nx[i] -= r * c[i];
        }
        c = std::move(nx);
    }
    return poly_real(std::move(c));
}

double poly_norm(const discrete_measure& mu, const norm_param& norm, const poly_real& p) {
    if (norm.is_lp()) {
        kahan s;
        for (const auto& a : mu.atoms()) s.add(a.mass * std::pow(std::abs(p(a.x)), norm.p));
        return std::pow(s.value(), 1.0 / norm.p);
    }
    double m = 0.0;
    for (const auto& a : mu.atoms()) m = std::max(m, a.mass * std::abs(p(a.x)));
    return m;
}

extremal_result rho_n(const discrete_measure& mu, const norm_param& norm, cplx z, int n) {
    if (n < 0) fail(errc::validation, "degree must be >= 0");
    if (z.imag() < 0.0) z = std::conj(z); // real coefficients: rho(z) = rho(conj z)
    std::size_t natoms = mu.size();

    // Degree at or above the support size: the vanishing polynomial is feasible.
    if (std::size_t(n) >= natoms) {
        double scale = 1.0;
        for (const auto& a : mu.atoms()) scale = std::max(scale, std::abs(a.x));
        double dist = min_distance_to_support(mu, z);
        if (dist > 1e-12 * scale) {
            extremal_result res;
            res.value = 0.0;
            if (natoms <= 64) {
                std::vector<double> roots;
                cplx denom = 1.0;
                for (const auto& a : mu.atoms()) {
                    roots.push_back(a.x);
                    denom *= (z - a.x);
                }
                res.minimizer = poly_real::from_roots(roots, 1.0 / std::abs(denom));
            }
            return res;
        }
        n = int(natoms) - 1; // value is constant from degree N-1 on when z sits on the support
    }

    if (norm.is_l2()) {
        ortho_basis basis(mu, n);
        extremal_result res;
        if (z.imag() == 0.0) {
            double x = z.real();
            auto pi = basis.orthonormal_at(x);
            double K = 0.0;
            for (double v : pi) K += v * v;
            res.value = 1.0 / std::sqrt(K);
            if (n <= kMaxMaterializeDegree) {
                VectorXd c(n + 1);
                for (int k = 0; k <= n; ++k) c[k] = pi[std::size_t(k)] / K;
                res.minimizer = combine_pi(basis, c);
            }
        } else {
            auto pi = basis.orthonormal_at(z);
            double g11 = 0, g22 = 0, g12 = 0;
            for (const auto& v : pi) {
                g11 += v.real() * v.real();
                g22 += v.imag() * v.imag();
                g12 += v.real() * v.imag();
            }
            double tr = g11 + g22, disc = std::sqrt((g11 - g22) * (g11 - g22) + 4 * g12 * g12);
            double lmax = 0.5 * (tr + disc);
            res.value = 1.0 / std::sqrt(lmax);
            if (n <= kMaxMaterializeDegree) {
                // top eigenvector of the 2x2 Gram in the span of (Re pi, Im pi)
                double u1 = g12, u2 = lmax - g11;
                if (std::abs(u1) + std::abs(u2) < 1e-300) { u1 = 1.0; u2 = 0.0; }
                VectorXd c(n + 1);
                for (int k = 0; k <= n; ++k)
                    c[k] = u1 * pi[std::size_t(k)].real() + u2 * pi[std::size_t(k)].imag();
                poly_real cand = combine_pi(basis, c);
                double mod = std::abs(cand(z));
                for (auto& cf : cand.coeffs) cf /= mod;
                res.minimizer = cand;
            }
        }
        return res;
    }

    if (z.imag() == 0.0) return rho_real_iterative(mu, norm, z.real(), n);
    return rho_complex_iterative(mu, norm, z, n);
}

extremal_result M_n(const discrete_measure& mu, const norm_param& norm, cplx z, int n) {
    if (n < 0) fail(errc::validation, "degree must be >= 0");
    if (z.imag() < 0.0) z = std::conj(z);
    std::size_t natoms = mu.size();
    extremal_result res;

    if (norm.is_l2()) {
        double scale = 1.0;
        for (const auto& a : mu.atoms()) scale = std::max(scale, std::abs(a.x));
        if (std::size_t(n) >= natoms && min_distance_to_support(mu, z) > 1e-12 * scale) {
            res.status = solve_status::unbounded;
            return res;
        }
        int neff = std::min(n, int(natoms) - 1);
        ortho_basis basis(mu, neff);
        auto pi = basis.orthonormal_at(z);
        double K = 0.0;
        for (const auto& v : pi) K += std::norm(v);
        res.value = std::sqrt(K);
        res.sandwich = {res.value, res.value};
    } else {
        auto rho = rho_n(mu, norm, z, n);
        res.iters = rho.iters;
        res.residual = rho.residual;
        if (rho.status == solve_status::non_converged) res.status = rho.status;
        if (rho.value < 1e-12) {
            res.status = solve_status::unbounded;
            return res;
        }
        res.value = 1.0 / rho.value;
        res.sandwich = {1.0 / rho.value, 2.0 / rho.value};
    }

    // (3.2.4)-type floor: the constant polynomial certifies M >= ||mu||^{-1/alpha};
    // the paper's 1/||mu|| form additionally needs ||mu|| >= 1.
    double norm_mu = norm.is_lp() ? mu.total_mass() : [&] {
        double m = 0.0;
        for (const auto& a : mu.atoms()) m = std::max(m, a.mass);
        return m;
    }();
    double floor_v = norm.is_lp() ? std::pow(norm_mu, -1.0 / norm.p) : 1.0 / norm_mu;
    if (norm.is_lp() && norm_mu >= 1.0) floor_v = std::max(floor_v, 1.0 / norm_mu);
    if (res.status != solve_status::unbounded && res.value < floor_v * (1.0 - 1e-9))
        fail(errc::assertion_failure, "M_n = " + format17(res.value) +
                                          " fell below the norm floor " + format17(floor_v));
    return res;
}

rho_limit_result rho_limit(const discrete_measure& mu, const norm_param& norm, tilt_mode mode,
                           cplx z, int n_max, double stall_tol, double zero_floor) {
    if (n_max < 0) fail(errc::validation, "n_max must be >= 0");
    discrete_measure tilted = tilt(mu, norm.tilt_exponent(), mode);
    std::size_t natoms = tilted.size();

    rho_limit_result out;
    out.zero_floor = zero_floor;
    out.rho.reserve(std::size_t(n_max) + 1);

    double scale = 1.0;
    for (const auto& a : tilted.atoms()) scale = std::max(scale, std::abs(a.x));
    bool off_support = min_distance_to_support(tilted, z) > 1e-12 * scale;

    if (norm.is_l2() && z.imag() == 0.0) {
        int basis_deg = std::min(n_max, int(natoms) - 1);
        ortho_basis basis(tilted, basis_deg);
        auto pi = basis.orthonormal_at(z.real());
        kahan K;
        for (int n = 0; n <= n_max; ++n) {
            if (n <= basis_deg) {
                K.add(pi[std::size_t(n)] * pi[std::size_t(n)]);
                out.rho.push_back(1.0 / std::sqrt(K.value()));
            } else {
                out.rho.push_back(off_support ? 0.0 : out.rho.back());
            }
        }
    } else {
        for (int n = 0; n <= n_max; ++n) {
            if (std::size_t(n) >= natoms && off_support) {
                out.rho.push_back(0.0);
                continue;
            }
            out.rho.push_back(rho_n(tilted, norm, z, n).value);
        }
    }

    for (std::size_t i = 1; i < out.rho.size(); ++i)
        if (out.rho[i] > out.rho[i - 1] * (1.0 + 1e-12) + 1e-300)
            fail(errc::assertion_failure,
                 "rho sequence increased at n=" + std::to_string(i) + ": " +
                     format17(out.rho[i - 1]) + " -> " + format17(out.rho[i]));

    out.limit_estimate = out.rho.back();
    out.plateau_window = (n_max + 3) / 4; // ceil(n_max/4)
    if (out.rho.back() < zero_floor) {
        out.verdict = limit_verdict::converged_to_zero;
    } else if (n_max >= out.plateau_window && out.plateau_window > 0) {
        double head = out.rho[std::size_t(n_max - out.plateau_window)];
        double tail = out.rho.back();
        if ((head - tail) / std::max(head, 1e-300) < stall_tol)
            out.verdict = limit_verdict::plateau;
    }
    return out;
}

monotone_report check_monotone_y(const discrete_measure& mu, const norm_param& norm, double a,
                                 const std::vector<double>& ys, int n) {
    monotone_report rep;
    double prev = -std::numeric_limits<double>::infinity();
    for (double y : ys) {
        if (y < 0.0) fail(errc::validation, "ys must be nonnegative");
        double v = M_n(mu, norm, cplx(a, y), n).value;
        double v_neg = M_n(mu, norm, cplx(a, -y), n).value;
        if (!nearly_equal(v, v_neg, 1e-12))
            fail(errc::assertion_failure, "M_n not even in y at y=" + format17(y) + ": " +
                                              format17(v) + " vs " + format17(v_neg));
        if (v < prev * (1.0 - 1e-12))
            fail(errc::assertion_failure, "M_n decreased in y at y=" + format17(y) + ": " +
                                              format17(prev) + " -> " + format17(v));
        rep.values.push_back(v);
        prev = v;
    }
    return rep;
}

tilt_inequality_report check_tilt_inequalities(const discrete_measure& mu, const norm_param& norm,
                                               cplx z, int n) {
    if (n < 1) fail(errc::validation, "tilt inequalities need n >= 1");
    if (std::abs(z) == 0.0) fail(errc::validation, "tilt inequalities need z != 0");
    double alpha = norm.tilt_exponent();
    discrete_measure mu_a = tilt(mu, alpha, tilt_mode::alpha);
    discrete_measure mu_a2 = tilt(mu, alpha, tilt_mode::alpha2);

    tilt_inequality_report rep;
    rep.rho_alpha2_nm1 = rho_n(mu_a2, norm, z, n - 1).value;
    rep.rho_alpha_n = rho_n(mu_a, norm, z, n).value;
    double az = std::abs(z);
    const double slack = 1e-9;
    if (rep.rho_alpha2_nm1 < az * rep.rho_alpha_n * (1.0 - slack) - 1e-300) {
        rep.holds = false;
        fail(errc::assertion_failure,
             "(2.1.6) rho violated: " + format17(rep.rho_alpha2_nm1) + " < |z| * " +
                 format17(rep.rho_alpha_n));
    }
    auto Ma = M_n(mu_a, norm, z, n);
    auto Ma2 = M_n(mu_a2, norm, z, n - 1);
    rep.M_alpha_n = Ma.value;
    rep.M_alpha2_nm1 = Ma2.value;
    bool lhs_unbounded = Ma.status == solve_status::unbounded;
    bool rhs_unbounded = Ma2.status == solve_status::unbounded;
    if (!lhs_unbounded &&
        (rhs_unbounded || Ma.value < az * Ma2.value * (1.0 - slack) - 1e-300)) {
        rep.holds = false;
        fail(errc::assertion_failure, "(2.1.6) M violated: " + format17(Ma.value) + " < |z| * " +
                                          format17(Ma2.value));
    }
    return rep;
}

extremal_result best_approximation(const discrete_measure& mu, const norm_param& norm,
                                   const std::vector<double>& f_at_atoms, int n) {
    const auto& atoms = mu.atoms();
    if (f_at_atoms.size() != atoms.size())
        fail(errc::validation, "f values must align with the atoms");
    Eigen::Index nA = Eigen::Index(atoms.size());
    int basis_deg = std::min(n, int(atoms.size()) - 1);
    ortho_basis basis(mu, basis_deg);

    VectorXd masses(nA), base(nA);
    for (Eigen::Index i = 0; i < nA; ++i) {
        masses[i] = atoms[std::size_t(i)].mass;
        base[i] = f_at_atoms[std::size_t(i)];
    }
    MatrixXd B(nA, basis_deg + 1);
    for (Eigen::Index i = 0; i < nA; ++i) {
        auto pi = basis.orthonormal_at(atoms[std::size_t(i)].x);
        for (int k = 0; k <= basis_deg; ++k) B(i, k) = -pi[std::size_t(k)];
    }
    auto sol = minimize_norm(masses, base, B, norm);
    extremal_result res;
    res.value = sol.value;
    res.iters = sol.iters;
    res.residual = sol.residual;
    res.status = sol.status;
    if (basis_deg <= kMaxMaterializeDegree) res.minimizer = combine_pi(basis, VectorXd(-sol.c));
    return res;
}

} // namespace polyden
