#pragma once

#include <vector>

#include "polyden/measure.hpp"
#include "polyden/num.hpp"

namespace polyden {

/// Three-term recurrence data of the monic orthogonal polynomials of a
/// discrete measure:  p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),
/// h_k = <p_k, p_k>, b_k = h_k / h_{k-1}.
///
/// Built by the discrete Stieltjes procedure on orthonormal value vectors
/// with one reorthogonalization pass per degree; the discrete orthogonality
/// residual is asserted <= 1e-10.
class ortho_basis {
public:
    /// n = highest polynomial degree; requires n < atom count.
    ortho_basis(const discrete_measure& mu, int n);

    int degree() const { return int(a_.size()) - 1; }
    const std::vector<double>& a() const { return a_; }
    const std::vector<double>& b() const { return b_; }
    const std::vector<double>& h() const { return h_; }
    double orthogonality_residual() const { return ortho_residual_; }

    /// orthonormal values pi_0(z) .. pi_n(z)
    std::vector<cplx> orthonormal_at(cplx z) const;
    std::vector<double> orthonormal_at(double x) const;

    /// K_n(x,x) = sum_{k<=n} pi_k(x)^2 for real x (Christoffel reciprocal)
    double kernel_diag(double x, int n) const;

    /// monomial coefficients of pi_k (ascending); desk-scale inspection only —
    /// ill-conditioned at high degree, all internal math stays in the basis
    std::vector<double> orthonormal_coeffs(int k) const;

private:
    std::vector<double> a_, b_, h_; // a_0..a_n, b_1..b_n, h_0..h_n
    double ortho_residual_ = 0.0;
};

} // namespace polyden
