#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyden/entire.hpp"
#include "polyden/family.hpp"
#include "polyden/measure.hpp"
#include "polyden/weight.hpp"

namespace polyden {

struct density_sum_report {
    std::vector<double> partial_sums;
    sum_trend trend = sum_trend::undecided;
    std::optional<double> tail_estimate;
    bool infinite_summand = false; // some w(lambda) = 0: divergent by convention
};

/// Sodin-Yuditskii sum (4.1.1): partial sums of 1/(w(lambda)|B'(lambda)|) in
/// ascending |lambda|, with decay extrapolation.  A zero where w vanishes
/// flags DIVERGENT immediately.
density_sum_report debranges_sum(const entire_fn& B, const grid_weight& w, std::size_t trunc);

/// The (4.1.2) variant with the regularized weight M_h in the denominator;
/// every zero must sit inside S_{M_h} (ZeroOutsideSupport otherwise).
density_sum_report prop41_sum(const entire_fn& B, const grid_weight& h, std::size_t trunc);

/// Lemma 4.1 corridor c e^{-alpha x} <= theta(x) <= C/(1+x); theta is pinned
/// to the upper envelope C/(1+x) so reported values are reproducible.
struct theta_spec {
    double c = 1.0, C = 1.0, alpha = 1.0;
    double operator()(double x) const { return C / (1.0 + x); }
    void validate_at(double x) const;
};

/// objective of (4.1.3): sum theta(|l|)/|l| + sum 1/(w(l)|l|^sigma |P'(l)|)
double lemma41_objective(const star_poly& P, const grid_weight& w, const theta_spec& theta,
                         int sigma);

enum class search_strategy { brute, local };

struct minimize_result {
    double value = 0.0;
    star_poly argmin{std::vector<double>{1.0}};
    std::string strategy;
    int starts = 0;
};

/// min of (4.1.3) over degree-N star polynomials with zeros on the declared
/// candidate grid (nodes of w with w > 0).  BRUTE enumerates (N <= 3); LOCAL
/// runs seeded multi-start coordinate descent on the same grid, so
/// LOCAL >= BRUTE always.
minimize_result lemma41_minimize(int N, const grid_weight& w, const theta_spec& theta, int sigma,
                                 search_strategy strategy, std::uint64_t seed = 1,
                                 int max_candidates = 41);

/// the (4.1.4) factorization data: nu atoms with weight values at the atoms
struct representation_pair {
    grid_weight w; // xs must coincide with the atom positions of nu
    discrete_measure nu;
    double p = 2.0;
};

/// mu with masses nu_mass * w(x)^p, zero masses dropped
discrete_measure build_measure(const representation_pair& pair);

struct verify_rep_report {
    bool ok = true;
    std::string witness;
    double inv_w_norm = 0.0; // ||1/w||_{L_p(mu)} over the atoms
};

/// exact (serialization precision) check that mu matches the pair
verify_rep_report verify_representation(const discrete_measure& mu,
                                        const representation_pair& pair);

} // namespace polyden
