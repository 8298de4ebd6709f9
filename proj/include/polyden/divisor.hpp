#pragma once

#include <optional>
#include <vector>

#include "polyden/entire.hpp"

namespace polyden {

/// Balanced polynomial divisor P_N of (3.3.10) with its selection record.
struct balanced_divisor {
    entire_fn P;       // genus-0 polynomial: same c and origin order, selected zeros
    int p_N = 0;       // selected positive zeros, counted with multiplicity
    int q_N = 0;       // selected negative zeros, counted with multiplicity
    double S_value = 0.0;
    enum class sweep { balanced, positive, negative, one_sided } case_taken = sweep::balanced;
    // bracketing record: phi(r) > 0 >= phi(r+1) (or mirrored) when a sweep ran
    std::optional<std::pair<double, double>> phi_bracket;
};

/// S(n, m) of (3.5.2) with count semantics: the stored balance coefficient
/// minus the first n positive reciprocal zeros plus the first m negative
/// reciprocal magnitudes (multiplicity expanded, ascending magnitude).
double partial_sums_S(const entire_fn& f, int n, int m);

/// The three-case selection of §3.5 producing a divisor satisfying
/// (3.3.11a,b,c).  InsufficientZeros when a sweep exhausts the stored data.
balanced_divisor build_balanced_divisor(const entire_fn& f, int N);

struct divisor_verification {
    double min_ratio = 0.0;      // min over the grid of |P_N| / ((1/e)|f|), slack applied
    double worst_x = 0.0;
    double min_deriv_ratio = 0.0; // same at the selected zeros
    double worst_zero = 0.0;
    double max_diff_on_disk = 0.0; // max |P_N - f| on |z| = 2 (64 samples)
    bool passed = true;
};

/// Grid check of (3.3.11b) on [min selected zero, max selected zero] and of
/// (3.3.11c) at every selected zero, with slack twice the evaluation tail
/// bound.  Throws AssertionFailure with the witness point on violation.
divisor_verification verify_divisor(const balanced_divisor& d, const entire_fn& f,
                                    int grid_points);

/// Lemma 4.3 data: separation radii (4.2.10), budgets (4.2.14) and the
/// comparison constant (4.2.17).  Indexing follows f.by_abs().
struct perturbation_plan {
    std::vector<double> rho;
    std::vector<double> alpha;
    std::vector<double> delta;
    double C = 0.0;
};

/// Budgets from the zero geometry; alpha_k found on a dyadic ladder with
/// 17-point ring sampling unless supplied.
perturbation_plan make_perturbation_plan(const entire_fn& B,
                                         const std::vector<double>* alpha_override = nullptr);

struct perturb_report {
    double max_log_ratio = 0.0; // max over n of log(|B'(a_n)| / |D'(b_n)|), vs log C
    std::size_t worst_index = 0;
    bool holds = true;
};

/// Builds D from the perturbed zeros (4.2.15) and asserts (4.2.5):
/// |B'(a_n)| <= C |D'(b_n)| for every n.  BudgetViolated when some
/// |b_n - a_n| exceeds delta_n.
perturb_report perturb_and_compare(const entire_fn& B, const perturbation_plan& plan,
                                   const std::vector<double>& b);

} // namespace polyden
