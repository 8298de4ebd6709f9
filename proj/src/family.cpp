#include "polyden/family.hpp"

#include <algorithm>
#include <cmath>

#include "polyden/errors.hpp"

namespace polyden {

star_poly::star_poly(std::vector<double> zs) : zeros(std::move(zs)) {
    for (double z : zeros)
        if (!(std::abs(z) > 0.0) || !std::isfinite(z))
            fail(errc::validation, "star polynomial zeros must be nonzero finite reals");
    std::sort(zeros.begin(), zeros.end());
    for (std::size_t i = 1; i < zeros.size(); ++i)
        if (zeros[i] == zeros[i - 1]) fail(errc::validation, "star polynomial zeros must be simple");
}

cplx star_poly::operator()(cplx z) const {
    cplx v = 1.0;
    for (double lam : zeros) v *= (1.0 - z / lam);
    return v;
}

double star_poly::deriv_at(std::size_t j) const {
    if (j >= zeros.size()) fail(errc::index_out_of_range, "zero index out of range");
    double lam = zeros[j];
    double v = -1.0 / lam;
    for (std::size_t i = 0; i < zeros.size(); ++i)
        if (i != j) v *= (1.0 - lam / zeros[i]);
    return v;
}

std::pair<double, double> lambda_functionals(const star_poly& P) {
    kahan s1, s2;
    for (double lam : P.zeros) {
        s1.add(1.0 / lam);
        s2.add(1.0 / (lam * lam));
    }
    return {std::abs(s1.value()), s2.value()};
}

bool member_lemma32(const star_poly& P, const lemma32_params& prm) {
    if (!(prm.alpha > 0 && prm.beta > 0 && prm.gamma > 0 && prm.delta_alpha > 0 &&
          prm.delta_beta > 0))
        fail(errc::validation, "lemma 3.2 constants must be positive");
    kahan es;
    for (double lam : P.zeros) es.add(std::exp(-prm.alpha * std::abs(lam)));
    if (es.value() > prm.delta_alpha) return false;
    for (std::size_t j = 0; j < P.zeros.size(); ++j) {
        double lam = std::abs(P.zeros[j]);
        double bound = prm.delta_beta * std::exp(-prm.beta * lam) * std::pow(lam, -1.0 - prm.gamma);
        if (std::abs(P.deriv_at(j)) < bound) return false;
    }
    return true;
}

bool member_thm33(const star_poly& P, const grid_weight& mu, double alpha, double gamma,
                  double delta_alpha) {
    if (!(alpha > 0 && gamma > 0 && delta_alpha > 0))
        fail(errc::validation, "theorem 3.3 constants must be positive");
    kahan es;
    for (double lam : P.zeros) es.add(std::exp(-alpha * std::abs(lam)));
    if (es.value() > delta_alpha) return false;
    for (std::size_t j = 0; j < P.zeros.size(); ++j) {
        double lam = P.zeros[j];
        double m = mu.value_at(lam);
        if (!(m > 0.0))
            fail(errc::weight_vanishes, "mu vanishes at the zero " + format17(lam));
        double bound = 1.0 / (m * std::pow(std::abs(lam), 1.0 + gamma));
        if (std::abs(P.deriv_at(j)) < bound) return false;
    }
    return true;
}

bool member_eq3410(const star_poly& P, const grid_weight& mu, double beta, double gamma,
                   double C) {
    if (!(beta > gamma && gamma > 0))
        fail(errc::validation, "(3.4.10) needs beta > gamma > 0");
    if (!(C > 0)) fail(errc::validation, "(3.4.10) needs C > 0");
    kahan s;
    for (std::size_t j = 0; j < P.zeros.size(); ++j) {
        double lam = P.zeros[j];
        double m = mu.value_at(lam);
        if (!(m > 0.0))
            fail(errc::weight_vanishes, "mu vanishes at the zero " + format17(lam));
        s.add(1.0 / (m * std::pow(std::abs(lam), beta) * std::pow(std::abs(P.deriv_at(j)), gamma)));
    }
    return s.value() <= C;
}

family_report family_diagnostic(const std::vector<star_poly>& seq, double compact_radius) {
    if (seq.empty()) fail(errc::validation, "empty family");
    family_report rep;
    std::size_t max_deg = 0;
    for (const auto& P : seq) {
        auto [l1, l2] = lambda_functionals(P);
        rep.sup_l1 = std::max(rep.sup_l1, l1);
        rep.sup_l2 = std::max(rep.sup_l2, l2);
        max_deg = std::max(max_deg, P.zeros.size());
    }

    for (std::size_t j = 0; j < max_deg; ++j) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        bool any = false;
        for (const auto& P : seq) {
            if (j >= P.zeros.size()) continue;
            // j-th smallest zero by magnitude
            std::vector<double> mags = P.zeros;
            std::sort(mags.begin(), mags.end(),
                      [](double a, double b) { return std::abs(a) < std::abs(b); });
            lo = std::min(lo, mags[j]);
            hi = std::max(hi, mags[j]);
            any = true;
        }
        rep.zero_track_spread.push_back(any ? hi - lo : 0.0);
    }

    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        double m = 0.0;
        for (int k = 0; k < 64; ++k) {
            cplx z = std::polar(compact_radius, 2.0 * M_PI * k / 64);
            m = std::max(m, std::abs(seq[i + 1](z) - seq[i](z)));
        }
        rep.consecutive_distance.push_back(m);
    }
    return rep;
}

} // namespace polyden
