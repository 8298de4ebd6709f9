#include "polyden/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace polyden {

namespace {

/// multiplicity-expanded reciprocals per side, ascending magnitude
struct side_data {
    std::vector<double> pos; // positive zeros
    std::vector<double> neg; // magnitudes of negative zeros
};

side_data expand_sides(const entire_fn& f) {
    side_data s;
    for (std::size_t j : f.by_abs()) {
        const auto& ze = f.zeros()[j];
        for (int t = 0; t < ze.mult; ++t) {
            if (ze.x > 0)
                s.pos.push_back(ze.x);
            else
                s.neg.push_back(-ze.x);
        }
    }
    return s;
}

double S_of(const entire_fn& f, const side_data& s, int n, int m) {
    if (n < 0 || m < 0 || std::size_t(n) > s.pos.size() || std::size_t(m) > s.neg.size())
        fail(errc::index_out_of_range,
             "S(n,m) indices exceed the stored zero counts: n=" + std::to_string(n) +
                 ", m=" + std::to_string(m));
    kahan acc;
    acc.add(f.balance());
    for (int k = 0; k < n; ++k) acc.add(-1.0 / s.pos[std::size_t(k)]);
    for (int l = 0; l < m; ++l) acc.add(1.0 / s.neg[std::size_t(l)]);
    return acc.value();
}

entire_fn make_divisor_fn(const entire_fn& f, const side_data& s, int p, int q) {
    // recompress the selected expanded zeros into (x, mult) entries
    std::map<double, int> sel;
    for (int k = 0; k < p; ++k) sel[s.pos[std::size_t(k)]] += 1;
    for (int l = 0; l < q; ++l) sel[-s.neg[std::size_t(l)]] += 1;
    std::vector<zero_entry> zeros;
    zeros.reserve(sel.size());
    for (const auto& [x, mult] : sel) zeros.push_back({x, mult});
    return entire_fn(f.order_at_origin(), f.leading(), 0, 0.0, std::move(zeros),
                     tail_model::complete());
}

/// complete a partially selected multiplicity group so (3.3.11c) compares
/// like orders; no-op for simple zeros
int complete_group(const std::vector<double>& side, int count) {
    while (std::size_t(count) < side.size() && count > 0 &&
           side[std::size_t(count)] == side[std::size_t(count) - 1])
        ++count;
    return count;
}

} // namespace

double partial_sums_S(const entire_fn& f, int n, int m) {
    side_data s = expand_sides(f);
    return S_of(f, s, n, m);
}

balanced_divisor build_balanced_divisor(const entire_fn& f, int N) {
    if (N < 1) fail(errc::validation, "N must be >= 1");
    side_data s = expand_sides(f);
    bool has_pos = !s.pos.empty(), has_neg = !s.neg.empty();
    if (!has_pos && !has_neg) fail(errc::validation, "no nonzero zeros stored");

    auto count_below = [N](const std::vector<double>& v) {
        return int(std::lower_bound(v.begin(), v.end(), double(N)) - v.begin());
    };
    int n_plus = count_below(s.pos);
    int n_minus = count_below(s.neg);

    balanced_divisor out{make_divisor_fn(f, s, 0, 0), 0, 0, 0.0,
                         balanced_divisor::sweep::balanced, std::nullopt};

    // truncated data must cover (-N, N); a complete (polynomial) zero set
    // may be selected in full for any N
    bool complete = f.tail().k == tail_model::kind::none;
    if (!complete) {
        if ((has_pos && s.pos.back() < N) || (has_neg && s.neg.back() < N))
            fail(errc::insufficient_zeros,
                 "stored zeros do not cover (-N, N): N=" + std::to_string(N));
    }

    if (!has_pos || !has_neg) {
        out.p_N = complete_group(s.pos, n_plus);
        out.q_N = complete_group(s.neg, n_minus);
        out.case_taken = balanced_divisor::sweep::one_sided;
        out.S_value = 0.0;
        out.P = make_divisor_fn(f, s, out.p_N, out.q_N);
        return out;
    }

    double S_N = S_of(f, s, n_plus, n_minus);
    double mag = std::abs(f.balance());
    for (int k = 0; k < n_plus; ++k) mag += 1.0 / s.pos[std::size_t(k)];
    for (int l = 0; l < n_minus; ++l) mag += 1.0 / s.neg[std::size_t(l)];
    double zero_tol = 1e-14 * std::max(mag, 1.0);

    if (std::abs(S_N) <= zero_tol) {
        out.p_N = n_plus;
        out.q_N = n_minus;
        out.S_value = S_N;
        out.case_taken = balanced_divisor::sweep::balanced;
    } else if (S_N > 0.0) {
        // phi_+(j) = S(n_plus + j, n_minus) decreases by one reciprocal per step
        double phi_prev = S_N;
        int j = 0;
        while (true) {
            if (std::size_t(n_plus + j + 1) > s.pos.size())
                fail(errc::insufficient_zeros,
                     "positive-side sweep exhausted the stored zeros at step " +
                         std::to_string(j));
            double phi_next = phi_prev - 1.0 / s.pos[std::size_t(n_plus + j)];
            if (phi_next <= 0.0) {
                out.phi_bracket = {phi_prev, phi_next}; // phi(r) > 0 >= phi(r+1)
                out.p_N = complete_group(s.pos, n_plus + j + 1);
                out.q_N = n_minus;
                out.case_taken = balanced_divisor::sweep::positive;
                break;
            }
            phi_prev = phi_next;
            ++j;
        }
        out.S_value = S_of(f, s, out.p_N, out.q_N);
    } else {
        double phi_prev = S_N;
        int j = 0;
        while (true) {
            if (std::size_t(n_minus + j + 1) > s.neg.size())
                fail(errc::insufficient_zeros,
                     "negative-side sweep exhausted the stored zeros at step " +
                         std::to_string(j));
            double phi_next = phi_prev + 1.0 / s.neg[std::size_t(n_minus + j)];
            if (phi_next >= 0.0) {
                out.phi_bracket = {phi_prev, phi_next}; // phi(r) < 0 <= phi(r+1)
                out.p_N = n_plus;
                out.q_N = complete_group(s.neg, n_minus + j + 1);
                out.case_taken = balanced_divisor::sweep::negative;
                break;
            }
            phi_prev = phi_next;
            ++j;
        }
        out.S_value = S_of(f, s, out.p_N, out.q_N);
    }
    out.P = make_divisor_fn(f, s, out.p_N, out.q_N);
    return out;
}

divisor_verification verify_divisor(const balanced_divisor& d, const entire_fn& f,
                                    int grid_points) {
    if (grid_points < 2) fail(errc::validation, "need at least 2 grid points");
    const auto& sel = d.P.zeros();
    if (sel.empty()) fail(errc::validation, "divisor selects no zeros");
    double lo = sel.front().x, hi = sel.back().x;
    if (d.P.order_at_origin() > 0) {
        lo = std::min(lo, 0.0);
        hi = std::max(hi, 0.0);
    }
    double Rall = f.max_abs_zero() * (1.0 + 1e-9) + 1e-9;

    divisor_verification rep;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    const double inv_e = std::exp(-1.0);

    for (int i = 0; i < grid_points; ++i) {
        double x = lo + (hi - lo) * i / (grid_points - 1);
        auto fx = eval(f, x, Rall);
        double slack = fx.tail_log_bound ? std::exp(-2.0 * *fx.tail_log_bound) : 1.0;
        double lhs = std::abs(std::exp(d.P.eval_log(x, Rall * 2)).real());
        double rhs = inv_e * std::abs(fx.value) * slack;
        if (rhs > 0.0) {
            double ratio = lhs / rhs;
            if (ratio < rep.min_ratio) {
                rep.min_ratio = ratio;
                rep.worst_x = x;
            }
        }
    }
    if (rep.min_ratio < 1.0) {
        rep.passed = false;
        fail(errc::assertion_failure, "(3.3.11b) violated at x = " + format17(rep.worst_x) +
                                          ": |P_N| / ((1/e)|f|) = " + format17(rep.min_ratio));
    }

    rep.min_deriv_ratio = std::numeric_limits<double>::infinity();
    for (const auto& ze : sel) {
        std::size_t j_f = f.find_zero(ze.x);
        if (j_f == std::size_t(-1) || f.zeros()[j_f].mult != ze.mult)
            continue; // partially selected multiplicity group: orders differ, skip
        auto dP = derivative_order_mk(d.P, ze.x);
        auto df_ = derivative_order_mk(f, ze.x);
        double slack = df_.tail_log_bound ? std::exp(-2.0 * *df_.tail_log_bound) : 1.0;
        double rhs = inv_e * std::abs(df_.value) * slack;
        if (rhs <= 0.0) continue;
        double ratio = std::abs(dP.value) / rhs;
        if (ratio < rep.min_deriv_ratio) {
            rep.min_deriv_ratio = ratio;
            rep.worst_zero = ze.x;
        }
    }
    if (rep.min_deriv_ratio < 1.0) {
        rep.passed = false;
        fail(errc::assertion_failure,
             "(3.3.11c) violated at the zero " + format17(rep.worst_zero) +
                 ": |P_N^(m)| / ((1/e)|f^(m)|) = " + format17(rep.min_deriv_ratio));
    }

    for (int k = 0; k < 64; ++k) {
        double phi = 2.0 * M_PI * k / 64 + M_PI / 128;
        cplx z = std::polar(2.0, phi);
        cplx Pz = std::exp(d.P.eval_log(z, Rall * 2));
        cplx fz = std::exp(f.eval_log(z, Rall));
        rep.max_diff_on_disk = std::max(rep.max_diff_on_disk, std::abs(Pz - fz));
    }
    return rep;
}

namespace {

/// B with the factor at index j removed, evaluated at real x (log modulus)
double log_abs_B_without(const entire_fn& B, std::size_t j, double x) {
    double acc = std::log(std::abs(B.leading()));
    if (B.order_at_origin() > 0) acc += B.order_at_origin() * std::log(std::abs(x));
    if (B.genus() == 1) acc += -B.balance() * x;
    for (std::size_t i = 0; i < B.zeros().size(); ++i) {
        if (i == j) continue;
        const auto& ze = B.zeros()[i];
        double w = 1.0 - x / ze.x;
        acc += ze.mult * std::log(std::abs(w));
        if (B.genus() == 1) acc += ze.mult * x / ze.x;
    }
    return acc;
}

} // namespace

perturbation_plan make_perturbation_plan(const entire_fn& B,
                                         const std::vector<double>* alpha_override) {
    if (B.order_at_origin() > 0) fail(errc::zero_at_origin, "Lemma 4.3 data excludes 0 from the zeros");
    if (!B.all_simple()) fail(errc::multiple_zero, "Lemma 4.3 needs simple zeros");
    const auto& order = B.by_abs();
    std::size_t n = order.size();
    if (n == 0) fail(errc::validation, "no zeros");
    if (alpha_override && alpha_override->size() != n)
        fail(errc::validation, "alpha override must match the zero count");
    B.ensure_derivatives(n);

    // distinct magnitudes, ascending, for the (4.2.10) gaps
    std::vector<double> mags;
    mags.reserve(n);
    for (std::size_t k : order) mags.push_back(std::abs(B.zeros()[k].x));
    std::vector<double> distinct;
    for (double m : mags)
        if (distinct.empty() || m != distinct.back()) distinct.push_back(m);

    perturbation_plan plan;
    plan.rho.resize(n);
    plan.alpha.resize(n);
    plan.delta.resize(n);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t j = order[k];
        double ak = B.zeros()[j].x;
        double aak = std::abs(ak);
        double gap = std::numeric_limits<double>::infinity();
        auto it = std::lower_bound(distinct.begin(), distinct.end(), aak);
        if (it != distinct.end() && *it == aak) {
            if (it + 1 != distinct.end()) gap = std::min(gap, *(it + 1) - aak);
            if (it != distinct.begin()) gap = std::min(gap, aak - *(it - 1));
        }
        plan.rho[k] = std::min({1.0, aak, gap});

        if (alpha_override) {
            plan.alpha[k] = (*alpha_override)[k];
        } else {
            // dyadic ladder: the largest ring radius on which the removed-factor
            // product stays above half its center value at 17 sample points
            double threshold =
                std::log(0.5) + std::log(aak) + B.deriv_log(j).log_abs;
            double alpha_k = 0.0;
            for (double r = plan.rho[k] / 2.0; r > plan.rho[k] * 1e-9; r *= 0.5) {
                bool ok = true;
                for (int t = 0; t < 17 && ok; ++t) {
                    double x = ak - r + 2.0 * r * t / 16.0;
                    ok = log_abs_B_without(B, j, x) >= threshold;
                }
                if (ok) { alpha_k = r; break; }
            }
            plan.alpha[k] = alpha_k;
        }
        plan.delta[k] = std::min(plan.alpha[k], plan.rho[k] / (4.0 * (1.0 + ak * ak)));
    }

    kahan csum;
    for (std::size_t k : order) {
        double ak = B.zeros()[k].x;
        csum.add(1.0 / (1.0 + ak * ak));
    }
    double tail_term = 0.0;
    if (B.tail().k == tail_model::kind::power) {
        double expo = B.tail().exponent - 2.0;
        if (expo < -1.0) {
            int sides = B.two_sided() ? 2 : 1;
            tail_term = sides * B.tail().coeff * std::pow(B.max_abs_zero(), expo + 1.0) /
                        (-(expo + 1.0));
        }
    }
    plan.C = 8.0 * std::exp(csum.value() + tail_term);
    return plan;
}

perturb_report perturb_and_compare(const entire_fn& B, const perturbation_plan& plan,
                                   const std::vector<double>& b) {
    const auto& order = B.by_abs();
    if (b.size() != order.size() || plan.delta.size() != order.size())
        fail(errc::validation, "perturbed zeros must align with the plan (by_abs order)");
    std::string offenders;
    for (std::size_t k = 0; k < order.size(); ++k) {
        double ak = B.zeros()[order[k]].x;
        if (std::abs(b[k] - ak) > plan.delta[k] * (1.0 + 1e-12))
            offenders += (offenders.empty() ? "" : ", ") + std::to_string(k);
    }
    if (!offenders.empty())
        fail(errc::budget_violated, "perturbations exceed delta at indices: " + offenders);

    std::vector<zero_entry> dz;
    dz.reserve(b.size());
    for (double x : b) dz.push_back({x, 1});
    entire_fn D(0, 1.0, 0, 0.0, std::move(dz), tail_model::complete());
    D.ensure_derivatives(D.by_abs().size());
    B.ensure_derivatives(order.size());

    perturb_report rep;
    rep.max_log_ratio = -std::numeric_limits<double>::infinity();
    double logC = std::log(plan.C);
    for (std::size_t k = 0; k < order.size(); ++k) {
        std::size_t jD = D.find_zero(b[k]);
        double lr = B.deriv_log(order[k]).log_abs - D.deriv_log(jD).log_abs;
        if (lr > rep.max_log_ratio) {
            rep.max_log_ratio = lr;
            rep.worst_index = k;
        }
    }
    if (rep.max_log_ratio > logC + 1e-12) {
        rep.holds = false;
        fail(errc::assertion_failure,
             "(4.2.5) violated at index " + std::to_string(rep.worst_index) +
                 ": |B'(a)|/|D'(b)| = " + format17(std::exp(rep.max_log_ratio)) +
                 " exceeds C = " + format17(plan.C));
    }
    return rep;
}

} // namespace polyden
