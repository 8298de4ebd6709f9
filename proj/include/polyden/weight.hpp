#pragma once

#include <optional>
#include <vector>

#include "polyden/errors.hpp"
#include "polyden/num.hpp"

namespace polyden {

/// Weight sampled on a strictly increasing grid, values in [0,1].
/// All verdicts below are grid-sense: the semicontinuity window is one
/// grid step, the finest proxy a sampled weight supports.
struct grid_weight {
    std::vector<double> xs;
    std::vector<double> ws;
    double resolution = 0.0; // max consecutive spacing

    grid_weight() = default;
    grid_weight(std::vector<double> xs_, std::vector<double> ws_);

    std::size_t size() const { return xs.size(); }

    /// linear interpolation; error WeightVanishes outside the covered range
    double value_at(double x) const;
    /// nearest grid index for x
    std::size_t nearest(double x) const;
};

struct space_class {
    bool normed = false;      // (1.4.7) grid closure of S_h covers the grid
    bool banach_c0w = false;  // (1.4.8d) h > 0 on every node, window minima positive
    bool banach_n0w = false;  // (1.4.9d) window minima over S_h positive
};

/// Grid proxy of the upper Baire regularization: one-step window maximum.
grid_weight upper_baire(const grid_weight& w);

space_class classify_space(const grid_weight& w);

/// max over the grid of |x|^n w(x) for n = 0..n_max  (condition (1.5.1))
std::vector<double> moment_boundedness(const grid_weight& w, int n_max);

struct theorem12_report {
    // per m = 1..m_max: sup over consecutive grid pairs inside {M_w >= 1/m}
    // of |f(x_{i+1}) - f(x_i)|  (modulus of continuity at grid scale)
    std::vector<double> continuity_moduli;
    // delta ladder for the vanishing condition: (delta, sup of M_w |f| on {0 < M_w < delta})
    std::vector<std::pair<double, double>> smallness_ladder;
    bool vanishing_condition_holds = false; // ladder tail < eps
};

/// Grid checks of the Theorem 1.2 approximability conditions for sampled f.
/// `f` is aligned with the grid of `w`; NaN marks "undefined" and is only
/// allowed where M_w = 0.
theorem12_report check_theorem12_conditions(const std::vector<double>& f, const grid_weight& w,
                                            int m_max, double eps);

struct witness_result {
    std::vector<double> values;        // F sampled on the grid of h
    std::vector<std::size_t> nodes;    // selected grid indices x_1, x_2, ...
    std::vector<double> lambda;        // 1/h at the selected nodes
    std::vector<double> window_max;    // max F over shrinking windows around x0
    std::vector<double> weighted_max;  // max h*F over {h < 1/lambda_n}
};

/// Hat-function witness of (1.7.2.1): F(x_k) = sqrt(lambda_{k-1}) blows up
/// near x0 while h*F stays small.  NoVanishingSequence when h does not
/// vanish along any grid sequence approaching x0.
witness_result unbounded_witness(const grid_weight& h, double x0);

} // namespace polyden
