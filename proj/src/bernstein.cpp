#include "polyden/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace polyden {

namespace {

/// weight value at a zero, 0 when the grid does not cover it
double weight_at_or_zero(const grid_weight& w, double x) {
    if (x < w.xs.front() - w.resolution || x > w.xs.back() + w.resolution) return 0.0;
    return w.value_at(x);
}

density_sum_report sum_against(const entire_fn& B, const grid_weight& w, std::size_t trunc,
                               bool use_corrected_trend) {
    density_sum_report rep;
    B.ensure_derivatives(B.by_abs().size());
    trunc = std::min(trunc, B.by_abs().size() + (B.order_at_origin() == 1 ? 1 : 0));

    std::vector<double> log_g_by_abs(B.by_abs().size(),
                                     -std::numeric_limits<double>::infinity());
    kahan sum;
    std::size_t taken = 0;

    // an origin zero contributes first (|lambda| = 0): f'(0) = c for m = 1
    if (B.order_at_origin() == 1 && taken < trunc) {
        double w0 = weight_at_or_zero(w, 0.0);
        if (w0 <= 0.0) {
            rep.infinite_summand = true;
            rep.trend = sum_trend::divergent;
            return rep;
        }
        sum.add(1.0 / (w0 * std::abs(B.leading())));
        rep.partial_sums.push_back(sum.value());
        ++taken;
    }

    for (std::size_t k = 0; k < B.by_abs().size() && taken < trunc; ++k, ++taken) {
        std::size_t j = B.by_abs()[k];
        double lam = B.zeros()[j].x;
        double wl = weight_at_or_zero(w, lam);
        if (wl <= 0.0) {
            rep.infinite_summand = true;
            rep.trend = sum_trend::divergent;
            return rep;
        }
        double dlog = use_corrected_trend ? B.corrected_deriv_log_abs(j)
                                          : B.deriv_log(j).log_abs;
        double lg = -std::log(wl) - dlog;
        log_g_by_abs[k] = lg;
        sum.add(std::exp(lg));
        rep.partial_sums.push_back(sum.value());
    }

    if (B.tail().k == tail_model::kind::none) {
        rep.trend = sum_trend::convergent;
        rep.tail_estimate = 0.0;
        return rep;
    }
    double slope = B.asymptotic_slope(log_g_by_abs);
    double kappa = B.density_exponent_est();
    rep.trend = classify_sum(slope, kappa);
    // explosive summands settle it regardless of the fit
    std::size_t nlg = log_g_by_abs.size();
    if (nlg >= 4 && log_g_by_abs[nlg - 1] > log_g_by_abs[nlg / 2] &&
        log_g_by_abs[nlg - 1] > 0.0)
        rep.trend = sum_trend::divergent;
    if (rep.trend == sum_trend::convergent && !std::isnan(slope)) {
        double s = slope + kappa;
        double lmax = B.max_abs_zero();
        double last = std::exp(log_g_by_abs[nlg - 1]);
        rep.tail_estimate = last * lmax / (-s - 1.0);
    }
    return rep;
}

} // namespace

density_sum_report debranges_sum(const entire_fn& B, const grid_weight& w, std::size_t trunc) {
    if (!B.all_simple()) fail(errc::multiple_zero, "de Branges sum needs simple zeros");
    return sum_against(B, w, trunc, true);
}

density_sum_report prop41_sum(const entire_fn& B, const grid_weight& h, std::size_t trunc) {
    if (!B.all_simple()) fail(errc::multiple_zero, "the (4.1.2) sum needs simple zeros");
    grid_weight mh = upper_baire(h);
    std::string offenders;
    auto check = [&](double lam) {
        if (lam < mh.xs.front() - mh.resolution || lam > mh.xs.back() + mh.resolution ||
            mh.ws[mh.nearest(lam)] <= 0.0)
            offenders += (offenders.empty() ? "" : ", ") + format17(lam);
    };
    if (B.order_at_origin() == 1) check(0.0);
    for (const auto& ze : B.zeros()) check(ze.x);
    if (!offenders.empty())
        fail(errc::zero_outside_support, "zeros outside S_{M_h}: " + offenders);
    return sum_against(B, mh, trunc, true);
}

void theta_spec::validate_at(double x) const {
    if (!(c > 0 && C > 0 && alpha > 0)) fail(errc::validation, "theta constants must be positive");
    if (c * std::exp(-alpha * x) > C / (1.0 + x) * (1.0 + 1e-12))
        fail(errc::validation, "theta corridor is empty at x = " + format17(x));
}

double lemma41_objective(const star_poly& P, const grid_weight& w, const theta_spec& theta,
                         int sigma) {
    if (sigma != 0 && sigma != 1) fail(errc::validation, "sigma must be 0 or 1");
    kahan acc;
    for (std::size_t j = 0; j < P.zeros.size(); ++j) {
        double lam = std::abs(P.zeros[j]);
        theta.validate_at(lam);
        double wl = weight_at_or_zero(w, P.zeros[j]);
        if (wl <= 0.0)
            fail(errc::weight_vanishes, "w vanishes at the zero " + format17(P.zeros[j]));
        acc.add(theta(lam) / lam);
        acc.add(1.0 / (wl * std::pow(lam, double(sigma)) * std::abs(P.deriv_at(j))));
    }
    return acc.value();
}

namespace {

std::vector<double> candidate_grid(const grid_weight& w, int max_candidates) {
    std::vector<double> nodes;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w.ws[i] > 0.0 && w.xs[i] != 0.0) nodes.push_back(w.xs[i]);
    if (nodes.size() <= std::size_t(max_candidates)) return nodes;
    std::vector<double> out;
    out.reserve(std::size_t(max_candidates));
    for (int t = 0; t < max_candidates; ++t)
        out.push_back(nodes[std::size_t(t) * (nodes.size() - 1) / std::size_t(max_candidates - 1)]);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double objective_or_inf(const std::vector<double>& zeros, const grid_weight& w,
                        const theta_spec& theta, int sigma) {
    std::vector<double> copy = zeros;
    star_poly P(std::move(copy));
    return lemma41_objective(P, w, theta, sigma);
}

} // namespace

minimize_result lemma41_minimize(int N, const grid_weight& w, const theta_spec& theta, int sigma,
                                 search_strategy strategy, std::uint64_t seed,
                                 int max_candidates) {
    if (N < 1) fail(errc::validation, "degree must be >= 1");
    auto cand = candidate_grid(w, max_candidates);
    if (cand.size() < std::size_t(N))
        fail(errc::validation, "not enough positive-weight grid nodes for degree " +
                                   std::to_string(N));

    minimize_result best;
    best.value = std::numeric_limits<double>::infinity();

    if (strategy == search_strategy::brute) {
        if (N > 3) fail(errc::validation, "BRUTE enumeration is limited to N <= 3");
        std::vector<std::size_t> idx(static_cast<std::size_t>(N));
        // ordered index combinations
        std::function<void(std::size_t, int)> rec = [&](std::size_t from, int level) {
            if (level == N) {
                std::vector<double> zs(static_cast<std::size_t>(N));
                for (int t = 0; t < N; ++t) zs[std::size_t(t)] = cand[idx[std::size_t(t)]];
                double v = objective_or_inf(zs, w, theta, sigma);
                std::sort(zs.begin(), zs.end());
                if (v < best.value ||
                    (v == best.value && zs < best.argmin.zeros)) {
                    best.value = v;
                    best.argmin = star_poly(zs);
                }
                return;
            }
            for (std::size_t i = from; i < cand.size(); ++i) {
                idx[std::size_t(level)] = i;
                rec(i + 1, level + 1);
            }
        };
        rec(0, 0);
        best.strategy = "brute";
        return best;
    }

    // multi-start coordinate descent on the candidate grid
    const int n_starts = 10;
    rng gen(seed);
    for (int s = 0; s < n_starts; ++s) {
        std::vector<std::size_t> pick;
        while (pick.size() < std::size_t(N)) {
            std::size_t i = std::size_t(gen.below(cand.size()));
            if (std::find(pick.begin(), pick.end(), i) == pick.end()) pick.push_back(i);
        }
        std::vector<double> zs;
        for (std::size_t i : pick) zs.push_back(cand[i]);
        double cur = objective_or_inf(zs, w, theta, sigma);
        for (int sweep = 0; sweep < 50; ++sweep) {
            bool moved = false;
            for (int t = 0; t < N; ++t) {
                double save = zs[std::size_t(t)];
                double best_here = cur;
                double best_z = save;
                for (double c : cand) {
                    if (std::count(zs.begin(), zs.end(), c) >
                        (c == save ? 1 : 0))
                        continue; // zeros must stay distinct
                    zs[std::size_t(t)] = c;
                    double v = objective_or_inf(zs, w, theta, sigma);
                    if (v < best_here) {
                        best_here = v;
                        best_z = c;
                    }
                }
                zs[std::size_t(t)] = best_z;
                if (best_here < cur) {
                    cur = best_here;
                    moved = true;
                }
            }
            if (!moved) break;
        }
        std::sort(zs.begin(), zs.end());
        if (cur < best.value || (cur == best.value && zs < best.argmin.zeros)) {
            best.value = cur;
            best.argmin = star_poly(zs);
        }
    }
    best.strategy = "local";
    best.starts = n_starts;
    return best;
}

discrete_measure build_measure(const representation_pair& pair) {
    std::vector<atom> atoms;
    for (const auto& a : pair.nu.atoms()) {
        auto it = std::lower_bound(pair.w.xs.begin(), pair.w.xs.end(), a.x);
        if (it == pair.w.xs.end() || *it != a.x)
            fail(errc::support_mismatch,
                 "pair weight has no node at the nu atom x=" + format17(a.x));
        double wv = pair.w.ws[std::size_t(it - pair.w.xs.begin())];
        double mass = a.mass * std::pow(wv, pair.p);
        if (mass > 0.0) atoms.push_back({a.x, mass});
    }
    if (atoms.empty()) fail(errc::empty_measure, "w^p annihilates every nu atom");
    return discrete_measure(std::move(atoms));
}

verify_rep_report verify_representation(const discrete_measure& mu,
                                        const representation_pair& pair) {
    verify_rep_report rep;
    kahan inv_w;
    for (const auto& a : mu.atoms()) {
        auto nu_it =
            std::find_if(pair.nu.atoms().begin(), pair.nu.atoms().end(),
                         [&](const atom& b) { return b.x == a.x; });
        if (nu_it == pair.nu.atoms().end())
            fail(errc::support_mismatch, "mu atom at x=" + format17(a.x) + " outside supp nu");
        auto it = std::lower_bound(pair.w.xs.begin(), pair.w.xs.end(), a.x);
        if (it == pair.w.xs.end() || *it != a.x)
            fail(errc::support_mismatch, "pair weight has no node at x=" + format17(a.x));
        double wv = pair.w.ws[std::size_t(it - pair.w.xs.begin())];
        if (wv <= 0.0)
            fail(errc::support_mismatch, "w vanishes on the mu atom at x=" + format17(a.x));
        double expect = nu_it->mass * std::pow(wv, pair.p);
        if (expect != a.mass) {
            rep.ok = false;
            if (rep.witness.empty())
                rep.witness = "mass mismatch at x=" + format17(a.x) + ": " + format17(a.mass) +
                              " vs w^p nu = " + format17(expect);
        }
        inv_w.add(a.mass * std::pow(wv, -pair.p));
    }
    // the other direction: every nu atom with positive w^p mass must appear
    for (const auto& b : pair.nu.atoms()) {
        auto it = std::lower_bound(pair.w.xs.begin(), pair.w.xs.end(), b.x);
        if (it == pair.w.xs.end() || *it != b.x) continue;
        double wv = pair.w.ws[std::size_t(it - pair.w.xs.begin())];
        if (b.mass * std::pow(wv, pair.p) > 0.0 && !mu.has_atom_at(b.x)) {
            rep.ok = false;
            if (rep.witness.empty())
                rep.witness = "mu misses the induced atom at x=" + format17(b.x);
        }
    }
    rep.inv_w_norm = std::pow(inv_w.value(), 1.0 / pair.p);
    return rep;
}

} // namespace polyden
