#pragma once

#include <vector>

#include "polyden/num.hpp"
#include "polyden/weight.hpp"

namespace polyden {

/// P(x) = prod (1 - x/lambda): real, simple nonzero zeros, P(0) = 1.
struct star_poly {
    std::vector<double> zeros;

    explicit star_poly(std::vector<double> zs);
    int degree() const { return int(zeros.size()); }

    cplx operator()(cplx z) const;
    /// P'(lambda_j) via the removed-factor product
    double deriv_at(std::size_t j) const;
};

/// l1 = |sum 1/lambda|, l2 = sum 1/lambda^2  (Proposition 3.4 functionals)
std::pair<double, double> lambda_functionals(const star_poly& P);

struct lemma32_params {
    double alpha, beta, gamma, delta_alpha, delta_beta;
};

/// membership in the (3.4.4) normal set
bool member_lemma32(const star_poly& P, const lemma32_params& prm);

/// membership in the (3.4.5) strictly normal set; mu is the C+*(R) proxy
bool member_thm33(const star_poly& P, const grid_weight& mu, double alpha, double gamma,
                  double delta_alpha);

/// the (3.4.10) substituted condition; requires beta > gamma > 0
bool member_eq3410(const star_poly& P, const grid_weight& mu, double beta, double gamma,
                   double C);

struct family_report {
    double sup_l1 = 0.0;
    double sup_l2 = 0.0;
    // per zero index: spread (max - min) of the j-th smallest-|.| zero
    std::vector<double> zero_track_spread;
    // max |P_{i+1} - P_i| on |z| = compact_radius, per consecutive pair
    std::vector<double> consecutive_distance;
};

/// Empirical normality evidence for a polynomial family (Definition 3.1 is
/// not decidable from finite data; this reports the Prop 3.4 functionals
/// and convergence tracks only).
family_report family_diagnostic(const std::vector<star_poly>& seq, double compact_radius);

} // namespace polyden
