#include "polyden/ortho.hpp"

#include <algorithm>
#include <cmath>

namespace polyden {

ortho_basis::ortho_basis(const discrete_measure& mu, int n) {
    if (n < 0) fail(errc::validation, "degree must be >= 0");
    std::size_t natoms = mu.size();
    if (std::size_t(n) >= natoms)
        fail(errc::degree_exceeds_support,
             "measure with " + std::to_string(natoms) + " atoms cannot support degree " +
                 std::to_string(n) + " orthogonal polynomials");

    const auto& atoms = mu.atoms();
    std::vector<double> w(natoms), x(natoms);
    for (std::size_t i = 0; i < natoms; ++i) { w[i] = atoms[i].mass; x[i] = atoms[i].x; }

    auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        kahan s;
        for (std::size_t i = 0; i < natoms; ++i) s.add(w[i] * u[i] * v[i]);
        return s.value();
    };

    // orthonormal value vectors q_k(x_i); monic data recovered via h_k
    std::vector<std::vector<double>> q;
    std::vector<double> cur(natoms, 1.0);
    double h0 = dot(cur, cur);
    h_ = {h0};
    double s0 = std::sqrt(h0);
    for (auto& v : cur) v /= s0;
    q.push_back(cur);

    for (int k = 0; k <= n; ++k) {
        // a_k = <x q_k, q_k>
        std::vector<double> xq(natoms);
        for (std::size_t i = 0; i < natoms; ++i) xq[i] = x[i] * q[k][i];
        double ak = dot(xq, q[k]);
        a_.push_back(ak);
        if (k == n) break;

        std::vector<double> next(natoms);
        double sqb_prev = k > 0 ? std::sqrt(b_[k - 1]) : 0.0;
        for (std::size_t i = 0; i < natoms; ++i) {
            next[i] = (x[i] - ak) * q[k][i];
            if (k > 0) next[i] -= sqb_prev * q[k - 1][i];
        }
        // one full reorthogonalization pass
        for (int j = 0; j <= k; ++j) {
            double c = dot(next, q[j]);
            for (std::size_t i = 0; i < natoms; ++i) next[i] -= c * q[j][i];
        }
        double nrm2 = dot(next, next);
        if (!(nrm2 > 0.0))
            fail(errc::degree_exceeds_support,
                 "numerical support exhausted at degree " + std::to_string(k + 1));
        double bk1 = nrm2; // (norm of recurrence residual)^2 = b_{k+1} in orthonormal scaling
        b_.push_back(bk1);
        h_.push_back(h_.back() * bk1);
        double s = std::sqrt(nrm2);
        for (auto& v : next) v /= s;
        q.push_back(std::move(next));
    }

    for (std::size_t j = 0; j < q.size(); ++j)
        for (std::size_t k = j; k < q.size(); ++k) {
            double d = dot(q[j], q[k]) - (j == k ? 1.0 : 0.0);
            ortho_residual_ = std::max(ortho_residual_, std::abs(d));
        }
    if (ortho_residual_ > 1e-10)
        fail(errc::assertion_failure,
             "orthogonality residual " + format17(ortho_residual_) + " exceeds 1e-10");
}

std::vector<cplx> ortho_basis::orthonormal_at(cplx z) const {
    int n = degree();
    std::vector<cplx> pi(std::size_t(n) + 1);
    pi[0] = 1.0 / std::sqrt(h_[0]);
    if (n == 0) return pi;
    pi[1] = (z - a_[0]) * pi[0] / std::sqrt(b_[0]);
    for (int k = 1; k < n; ++k)
        pi[std::size_t(k) + 1] =
            ((z - a_[std::size_t(k)]) * pi[std::size_t(k)] -
             std::sqrt(b_[std::size_t(k) - 1]) * pi[std::size_t(k) - 1]) /
            std::sqrt(b_[std::size_t(k)]);
    return pi;
}

std::vector<double> ortho_basis::orthonormal_at(double x) const {
    int n = degree();
    std::vector<double> pi(std::size_t(n) + 1);
    pi[0] = 1.0 / std::sqrt(h_[0]);
    if (n == 0) return pi;
    pi[1] = (x - a_[0]) * pi[0] / std::sqrt(b_[0]);
    for (int k = 1; k < n; ++k)
        pi[std::size_t(k) + 1] = ((x - a_[std::size_t(k)]) * pi[std::size_t(k)] -
                                  std::sqrt(b_[std::size_t(k) - 1]) * pi[std::size_t(k) - 1]) /
                                 std::sqrt(b_[std::size_t(k)]);
    return pi;
}

double ortho_basis::kernel_diag(double x, int n) const {
    auto pi = orthonormal_at(x);
    kahan s;
    for (int k = 0; k <= std::min(n, degree()); ++k) s.add(pi[std::size_t(k)] * pi[std::size_t(k)]);
    return s.value();
}

std::vector<double> ortho_basis::orthonormal_coeffs(int k) const {
    if (k < 0 || k > degree()) fail(errc::index_out_of_range, "basis index out of range");
    // monic coefficients by the recurrence, then normalize by sqrt(h_k)
    std::vector<std::vector<double>> p(std::size_t(k) + 1);
    p[0] = {1.0};
    if (k >= 1) {
        p[1] = {-a_[0], 1.0};
        for (int j = 1; j < k; ++j) {
            const auto& pj = p[std::size_t(j)];
            const auto& pm = p[std::size_t(j) - 1];
            std::vector<double> nx(pj.size() + 1, 0.0);
            for (std::size_t i = 0; i < pj.size(); ++i) {
                nx[i + 1] += pj[i];
                nx[i] -= a_[std::size_t(j)] * pj[i];
            }
            for (std::size_t i = 0; i < pm.size(); ++i) nx[i] -= b_[std::size_t(j) - 1] * pm[i];
            p[std::size_t(j) + 1] = std::move(nx);
        }
    }
    auto out = p[std::size_t(k)];
    double s = std::sqrt(h_[std::size_t(k)]);
    for (auto& c : out) c /= s;
    return out;
}

} // namespace polyden
