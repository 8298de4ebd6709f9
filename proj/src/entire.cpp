#include "polyden/entire.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polyden {

namespace {

constexpr double kRelZeroTol = 1e-12;

double rel_tol_at(double lambda) { return kRelZeroTol * std::max(1.0, std::abs(lambda)); }

} // namespace

entire_fn::entire_fn(int m, double c, int genus, double a, std::vector<zero_entry> zeros,
                     tail_model tail)
    : m_(m), c_(c), genus_(genus), a_(a), zeros_(std::move(zeros)), tail_(tail) {
    if (m_ < 0) fail(errc::validation, "order at origin must be >= 0");
    if (c_ == 0.0 || !std::isfinite(c_)) fail(errc::validation, "leading constant must be nonzero");
    if (genus_ != 0 && genus_ != 1) fail(errc::validation, "genus must be 0 or 1");
    if (genus_ == 0 && a_ != 0.0)
        fail(errc::validation, "genus-0 data cannot carry an exponential coefficient");
    for (const auto& z : zeros_) {
        if (!(std::abs(z.x) > 0.0) || !std::isfinite(z.x))
            fail(errc::validation, "zeros must be nonzero finite reals (origin order goes in m)");
        if (z.mult < 1) fail(errc::validation, "multiplicity must be >= 1");
    }
    std::sort(zeros_.begin(), zeros_.end(),
              [](const zero_entry& l, const zero_entry& r) { return l.x < r.x; });
    for (std::size_t i = 1; i < zeros_.size(); ++i)
        if (zeros_[i].x == zeros_[i - 1].x)
            fail(errc::validation, "duplicate zero entries; use the mult field");

    by_abs_.resize(zeros_.size());
    std::iota(by_abs_.begin(), by_abs_.end(), std::size_t{0});
    std::sort(by_abs_.begin(), by_abs_.end(), [&](std::size_t i, std::size_t j) {
        double ai = std::abs(zeros_[i].x), aj = std::abs(zeros_[j].x);
        if (ai != aj) return ai < aj;
        return zeros_[i].x < zeros_[j].x;
    });
    dcache_.resize(zeros_.size());
    dcached_.assign(zeros_.size(), 0);

    if (tail_.k == tail_model::kind::power) {
        if (!(tail_.coeff > 0.0)) fail(errc::validation, "power tail needs a positive coefficient");
        if (genus_ == 1 && tail_.exponent >= 1.0)
            fail(errc::validation, "genus-1 representation needs summable 1/lambda^2 tails");
        if (zeros_.size() >= 8) {
            // the declared density must cover the outer stored zeros
            double lmax = max_abs_zero();
            double lo = lmax / 2.0;
            double observed = 0.0;
            bool side_lo = false, side_hi = false;
            for (const auto& z : zeros_) {
                if (std::abs(z.x) >= lo) observed += z.mult;
                side_lo = side_lo || z.x < 0;
                side_hi = side_hi || z.x > 0;
            }
            int sides = int(side_lo) + int(side_hi);
            double k = tail_.exponent;
            double predicted =
                k == -1.0 ? tail_.coeff * std::log(2.0)
                          : tail_.coeff * (std::pow(lmax, k + 1) - std::pow(lo, k + 1)) / (k + 1);
            predicted *= sides;
            if (observed > 2.0 * predicted + 4.0)
                fail(errc::validation,
                     "tail model under-predicts the stored zero density: observed " +
                         format17(observed) + " zeros in the outer half-decade, model allows " +
                         format17(predicted));
        }
    }
}

double entire_fn::max_abs_zero() const {
    return zeros_.empty() ? 0.0 : std::abs(zeros_[by_abs_.back()].x);
}

bool entire_fn::all_simple() const {
    if (m_ > 1) return false;
    for (const auto& z : zeros_)
        if (z.mult != 1) return false;
    return true;
}

bool entire_fn::two_sided() const {
    bool neg = false, pos = false;
    for (const auto& z : zeros_) {
        neg = neg || z.x < 0;
        pos = pos || z.x > 0;
    }
    return neg && pos;
}

std::size_t entire_fn::zero_count_with_mult() const {
    std::size_t n = 0;
    for (const auto& z : zeros_) n += std::size_t(z.mult);
    return n;
}

std::size_t entire_fn::find_zero(double lambda) const {
    auto it = std::lower_bound(zeros_.begin(), zeros_.end(), lambda - rel_tol_at(lambda),
                               [](const zero_entry& z, double v) { return z.x < v; });
    if (it != zeros_.end() && std::abs(it->x - lambda) <= rel_tol_at(lambda))
        return std::size_t(it - zeros_.begin());
    return std::size_t(-1);
}

cplx entire_fn::eval_log(cplx z, double R) const {
    cplx acc = std::log(cplx(std::abs(c_))) + (c_ < 0 ? cplx(0.0, M_PI) : cplx(0.0));
    if (m_ > 0) acc += double(m_) * std::log(z);
    if (genus_ == 1) acc += -a_ * z;
    for (std::size_t idx : by_abs_) {
        const auto& ze = zeros_[idx];
        if (std::abs(ze.x) >= R) break;
        cplx w = -z / ze.x;
        cplx term = genus_ == 1 ? log1p_minus(w) : log1p_c(w);
        acc += double(ze.mult) * term;
    }
    return acc;
}

std::optional<double> entire_fn::reciprocal_power_tail(double R, double s) const {
    kahan stored;
    for (auto it = by_abs_.rbegin(); it != by_abs_.rend(); ++it) {
        double ax = std::abs(zeros_[*it].x);
        if (ax < R) break;
        stored.add(zeros_[*it].mult * std::pow(ax, -s));
    }
    if (tail_.k == tail_model::kind::none) return stored.value();
    if (tail_.k == tail_model::kind::unspecified) return std::nullopt;
    double start = std::max(R, max_abs_zero());
    double expo = tail_.exponent - s;
    if (expo >= -1.0) return std::nullopt; // model integral diverges
    int sides = two_sided() ? 2 : 1;
    double model = sides * tail_.coeff * std::pow(start, expo + 1.0) / (-(expo + 1.0));
    return stored.value() + model;
}

// ---------------------------------------------------------------------------
// Truncation geometry.  The stored zeros are a window of the true zero set;
// the removed-factor derivative at lambda computed from the window is off by
// the omitted tail factor, roughly exp(-lambda^2 * T2) with
// T2 = sum over unseen zeros of 1/lambda'^2 (first order exact under the
// two-sided pairing or the genus-1 convergence factors).  Everything that
// reasons about asymptotics of the derivative numbers (d_f, the class
// predicates, the (3.1.9b) trends) works with tail-corrected values and fits
// slopes only on the window where the residual distortion is provably small.
// Identity-type partial sums (3.1.7), (3.1.8), (3.1.9a) use the raw values:
// they must stay exact for the window's own polynomial.
// ---------------------------------------------------------------------------

namespace {

/// estimated sum of 1/lambda^2 over the unseen zeros
double tail_t2_estimate(const entire_fn& f) {
    double lmax = f.max_abs_zero();
    if (lmax == 0.0) return 0.0;
    const auto& tm = f.tail();
    if (tm.k == tail_model::kind::none) return 0.0;
    int sides = f.two_sided() ? 2 : 1;
    if (tm.k == tail_model::kind::power) {
        double expo = tm.exponent - 2.0;
        if (expo >= -1.0) return std::numeric_limits<double>::infinity();
        return sides * tm.coeff * std::pow(lmax, expo + 1.0) / (-(expo + 1.0));
    }
    // unspecified: continue the measured edge density
    double count = 0.0;
    for (const auto& z : f.zeros())
        if (std::abs(z.x) >= lmax / 2.0) count += z.mult;
    double density = count / (sides * (lmax / 2.0));
    return sides * density / lmax;
}

/// log of the omitted tail factor at a stored zero (the correction that
/// turns the window derivative into an estimate of the true one)
double tail_log_correction(const entire_fn& f, double lambda) {
    if (f.tail().k == tail_model::kind::none) return 0.0;
    if (f.genus() == 1 || f.two_sided()) return -lambda * lambda * tail_t2_estimate(f);
    // one-sided genus 0: first-order term survives
    if (f.tail().k == tail_model::kind::power && f.tail().exponent < -1.0) {
        double lmax = f.max_abs_zero();
        double t1 = f.tail().coeff * std::pow(lmax, f.tail().exponent + 1.0) /
                    (-(f.tail().exponent + 1.0));
        bool positive_side = f.zeros().front().x > 0;
        return -lambda * (positive_side ? t1 : -t1);
    }
    return 0.0;
}

/// |lambda| below which the residual distortion of the corrected derivative
/// is under ~0.1 log-units even if the declared density is 50% off
double safe_fit_radius(const entire_fn& f) {
    double t2 = tail_t2_estimate(f);
    if (!(t2 > 0.0)) return std::numeric_limits<double>::infinity();
    if (std::isinf(t2)) return 0.0;
    return std::sqrt(0.1 / t2);
}

/// by_abs positions usable for asymptotic slope fits
std::vector<std::size_t> fit_window(const entire_fn& f) {
    double cap = safe_fit_radius(f);
    const auto& order = f.by_abs();
    std::vector<std::size_t> inner;
    for (std::size_t k = 0; k < order.size(); ++k)
        if (std::abs(f.zeros()[order[k]].x) <= cap) inner.push_back(k);
    // upper portion of the usable range carries the asymptotics
    std::vector<std::size_t> out;
    double lo_cap = cap / 8.0;
    for (std::size_t k : inner)
        if (std::abs(f.zeros()[order[k]].x) > lo_cap) out.push_back(k);
    if (out.size() >= 6) return out;
    if (inner.size() >= 6) {
        std::vector<std::size_t> upper(inner.begin() + std::ptrdiff_t(inner.size() / 2),
                                       inner.end());
        if (upper.size() >= 6) return upper;
        return inner;
    }
    return inner;
}

/// slope of log_g (indexed like by_abs) against log|lambda| over the safe window
double safe_slope(const entire_fn& f, const std::vector<double>& log_g) {
    auto win = fit_window(f);
    if (win.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    std::vector<double> lx, ly;
    for (std::size_t k : win) {
        lx.push_back(std::log(std::abs(f.zeros()[f.by_abs()[k]].x)));
        ly.push_back(log_g[k]);
    }
    return fit_slope(lx, ly);
}

/// empirical density exponent; the declared model wins when present
double density_exponent(const entire_fn& f) {
    if (f.tail().k == tail_model::kind::power) return f.tail().exponent;
    const auto& order = f.by_abs();
    if (order.size() < 8) return 0.0;
    std::vector<double> lx, ly;
    double count = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        count += f.zeros()[order[k]].mult;
        if (k >= order.size() / 2) {
            lx.push_back(std::log(std::abs(f.zeros()[order[k]].x)));
            ly.push_back(std::log(count));
        }
    }
    return fit_slope(lx, ly) - 1.0;
}

} // namespace

double entire_fn::corrected_deriv_log_abs(std::size_t j) const {
    return deriv_log(j).log_abs + tail_log_correction(*this, zeros_[j].x);
}

double entire_fn::asymptotic_slope(const std::vector<double>& log_g_by_abs) const {
    return safe_slope(*this, log_g_by_abs);
}

double entire_fn::density_exponent_est() const { return density_exponent(*this); }

namespace {

void require_simple(const entire_fn& f, const char* what) {
    if (!f.all_simple())
        fail(errc::multiple_zero, std::string(what) + " requires simple zeros (and m <= 1)");
}

void check_pole(const entire_fn& f, cplx z) {
    for (const auto& ze : f.zeros())
        if (std::abs(z - ze.x) <= rel_tol_at(ze.x))
            fail(errc::pole_at_z, "z coincides with the zero at " + format17(ze.x));
    if (f.order_at_origin() >= 1 && std::abs(z) <= 1e-12)
        fail(errc::pole_at_z, "z coincides with the zero at the origin");
}

/// window edge just beyond the trunc-th zero by |lambda|
double window_beyond(const entire_fn& f, std::size_t trunc) {
    if (f.by_abs().empty()) return 1.0;
    if (trunc == 0) return 0.5 * std::abs(f.zeros()[f.by_abs().front()].x);
    if (trunc >= f.by_abs().size()) return f.max_abs_zero() * (1.0 + 1e-9) + 1e-9;
    return 0.5 * (std::abs(f.zeros()[f.by_abs()[trunc - 1]].x) +
                  std::abs(f.zeros()[f.by_abs()[trunc]].x));
}

} // namespace

eval_result eval(const entire_fn& f, cplx z, double R) {
    if (!(R > 0.0)) fail(errc::validation, "eval needs R > 0");
    if (!(std::abs(z) < R / 2.0)) fail(errc::validation, "eval window too small: need |z| < R/2");
    if (R > f.max_abs_zero() && f.tail().k == tail_model::kind::unspecified && !f.zeros().empty())
        fail(errc::tail_model_missing,
             "window R exceeds the stored zeros and no tail model is declared");

    eval_result out;
    if (std::abs(z) == 0.0) {
        out.value = f.order_at_origin() > 0 ? 0.0 : f.leading();
        out.tail_log_bound = 0.0;
        return out;
    }
    out.value = std::exp(f.eval_log(z, R));

    auto t2 = f.reciprocal_power_tail(R, 2.0);
    if (t2) {
        double u = std::abs(z) / R;
        double bound = std::abs(z) * std::abs(z) * (*t2) / (2.0 * (1.0 - u));
        if (f.genus() == 0) {
            if (f.two_sided()) {
                // stored omissions may be unpaired; add their first-order sum
                kahan imb;
                for (auto it = f.by_abs().rbegin(); it != f.by_abs().rend(); ++it) {
                    const auto& ze = f.zeros()[*it];
                    if (std::abs(ze.x) < R) break;
                    imb.add(ze.mult / ze.x);
                }
                bound += std::abs(z) * std::abs(imb.value());
            } else {
                auto t1 = f.reciprocal_power_tail(R, 1.0);
                if (!t1) return out; // no usable bound
                bound = std::abs(z) * (*t1) / (1.0 - u);
            }
        }
        out.tail_log_bound = bound;
    }
    return out;
}

void entire_fn::ensure_derivatives(std::size_t first_k_by_abs) const {
    std::lock_guard<std::mutex> lock(dmutex_);
    std::size_t want = std::min(first_k_by_abs, by_abs_.size());
    std::size_t n = zeros_.size();
    std::vector<double> labs(n);
    std::vector<double> xs(n);
    std::vector<long> pm(n + 1, 0); // multiplicity prefix sums (sorted-x order)
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = zeros_[i].x;
        labs[i] = std::log(std::abs(xs[i]));
        pm[i + 1] = pm[i] + zeros_[i].mult;
    }
    std::size_t first_pos = std::size_t(
        std::lower_bound(xs.begin(), xs.end(), 0.0) - xs.begin());
    kahan recip, mlabs;
    for (std::size_t i = 0; i < n; ++i) {
        recip.add(zeros_[i].mult / xs[i]);
        mlabs.add(zeros_[i].mult * labs[i]);
    }
    double S = recip.value();
    double S_mlabs = mlabs.value();

    for (std::size_t k = 0; k < want; ++k) {
        std::size_t j = by_abs_[k];
        if (dcached_[j] || zeros_[j].mult != 1) continue;
        double lj = xs[j];
        // the factor (1 - lj/li) is negative exactly for li strictly
        // between 0 and lj; zeros are sorted by x
        long neg = lj > 0 ? pm[j] - pm[first_pos] : pm[first_pos] - pm[j + 1];
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            acc += zeros_[i].mult * std::log(std::abs(xs[i] - lj));
        }
        acc -= S_mlabs - labs[j];
        signed_log d;
        d.log_abs = std::log(std::abs(c_)) + (m_ - 1) * labs[j] + acc;
        if (genus_ == 1) d.log_abs += lj * (S - a_);
        double sgn = (c_ < 0 ? -1.0 : 1.0) * (neg % 2 ? -1.0 : 1.0);
        if (m_ % 2 && lj < 0) sgn = -sgn;
        sgn *= lj < 0 ? 1.0 : -1.0; // removed factor contributes -1/lambda
        d.sign = sgn;
        dcache_[j] = d;
        dcached_[j] = 1;
    }
}

signed_log entire_fn::deriv_log(std::size_t j) const {
    if (j >= zeros_.size()) fail(errc::index_out_of_range, "zero index out of range");
    if (zeros_[j].mult != 1)
        fail(errc::multiple_zero, "zero at " + format17(zeros_[j].x) + " has multiplicity " +
                                      std::to_string(zeros_[j].mult));
    if (!dcached_[j]) ensure_derivatives(by_abs_.size());
    return dcache_[j];
}

entire_fn::deriv_envelope entire_fn::fit_deriv_envelope() const {
    deriv_envelope env;
    if (zeros_.size() < 6 || !all_simple()) return env;
    ensure_derivatives(by_abs_.size());
    auto win = fit_window(*this);
    if (win.size() < 3) return env;
    std::vector<double> lx, ly;
    for (std::size_t k : win) {
        std::size_t j = by_abs_[k];
        lx.push_back(std::log(std::abs(zeros_[j].x)));
        ly.push_back(-(dcache_[j].log_abs + tail_log_correction(*this, zeros_[j].x)));
    }
    env.beta = fit_slope(lx, ly);
    double mean = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) mean += ly[i] - env.beta * lx[i];
    mean /= double(lx.size());
    double worst = -std::numeric_limits<double>::infinity(), spread = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double r = ly[i] - env.beta * lx[i];
        worst = std::max(worst, r);
        spread = std::max(spread, std::abs(r - mean));
    }
    env.logC = worst + std::log(4.0); // documented 4x slack over the fitted envelope
    env.reliable = spread < std::log(10.0);
    return env;
}

deriv_result derivative_at_zero(const entire_fn& f, double lambda) {
    std::size_t j = f.find_zero(lambda);
    if (j == std::size_t(-1)) fail(errc::validation, format17(lambda) + " is not a stored zero");
    if (f.zeros()[j].mult != 1)
        fail(errc::multiple_zero, "zero at " + format17(lambda) + " has multiplicity " +
                                      std::to_string(f.zeros()[j].mult) +
                                      "; use derivative_order_mk");
    deriv_result out;
    out.log_form = f.deriv_log(j);
    out.value = out.log_form.value();
    if (f.tail().k == tail_model::kind::none) {
        out.tail_log_bound = 0.0;
    } else {
        double corr = tail_log_correction(f, lambda);
        if (corr != 0.0) out.tail_log_bound = 2.0 * std::abs(corr);
    }
    return out;
}

deriv_result derivative_order_mk(const entire_fn& f, double lambda) {
    std::size_t j = f.find_zero(lambda);
    if (j == std::size_t(-1)) fail(errc::validation, format17(lambda) + " is not a stored zero");
    int mk = f.zeros()[j].mult;
    if (mk == 1) return derivative_at_zero(f, lambda);

    const auto& zeros = f.zeros();
    double lj = zeros[j].x;
    double acc = 0.0;
    long neg = 0;
    kahan recip;
    for (std::size_t i = 0; i < zeros.size(); ++i) recip.add(zeros[i].mult / zeros[i].x);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (i == j) continue;
        double li = zeros[i].x;
        acc += zeros[i].mult * (std::log(std::abs(li - lj)) - std::log(std::abs(li)));
        if ((li - lj) * li < 0.0) neg += zeros[i].mult;
    }
    deriv_result out;
    out.log_form.log_abs = std::log(std::abs(f.leading())) +
                           (f.order_at_origin() - mk) * std::log(std::abs(lj)) +
                           std::lgamma(double(mk) + 1.0) + acc;
    if (f.genus() == 1) out.log_form.log_abs += lj * (recip.value() - f.balance());
    double sgn = (f.leading() < 0 ? -1.0 : 1.0) * (neg % 2 ? -1.0 : 1.0);
    if (f.order_at_origin() % 2 && lj < 0) sgn = -sgn;
    if (mk % 2) sgn *= lj < 0 ? 1.0 : -1.0; // (-1/lambda)^{m_k}
    out.log_form.sign = sgn;
    out.value = out.log_form.value();
    if (f.tail().k == tail_model::kind::none) out.tail_log_bound = 0.0;
    return out;
}

namespace {

/// tail bound of sum over unseen zeros of |z|^p / (|l|^p |f'(l)| |z-l|)
std::optional<double> partial_fraction_tail(const entire_fn& f, int p, cplx z) {
    if (f.tail().k == tail_model::kind::none) return 0.0;
    if (f.tail().k == tail_model::kind::unspecified) return std::nullopt;
    auto env = f.fit_deriv_envelope();
    if (!env.reliable) return std::nullopt;
    double R = f.max_abs_zero();
    if (!(std::abs(z) < R / 2.0)) return std::nullopt;
    double expo = f.tail().exponent + env.beta - p - 1.0;
    if (expo >= -1.0) return std::nullopt;
    int sides = f.two_sided() ? 2 : 1;
    double integral = sides * f.tail().coeff * std::pow(R, expo + 1.0) / (-(expo + 1.0));
    return std::pow(std::abs(z), p) * std::exp(env.logC) * integral /
           (1.0 - std::abs(z) / R);
}

} // namespace

df_estimate estimate_df(const entire_fn& f, int q_lo, int q_hi) {
    require_simple(f, "estimate_df");
    if (q_lo > q_hi) fail(errc::validation, "empty q range");
    f.ensure_derivatives(f.by_abs().size());
    double kappa = density_exponent(f);
    bool complete = f.tail().k == tail_model::kind::none;

    df_estimate out;
    const auto& order = f.by_abs();
    for (int q = q_lo; q <= q_hi; ++q) {
        std::vector<double> log_g(order.size());
        kahan partial;
        for (std::size_t k = 0; k < order.size(); ++k) {
            std::size_t j = order[k];
            double lam = f.zeros()[j].x;
            double lg = -(f.deriv_log(j).log_abs + tail_log_correction(f, lam)) -
                        (q + 1) * std::log(std::abs(lam));
            log_g[k] = lg;
            partial.add(std::exp(lg));
        }
        df_estimate::per_q info;
        info.partial_sum = partial.value();
        info.slope = safe_slope(f, log_g);
        info.trend = complete ? sum_trend::convergent : classify_sum(info.slope, kappa);
        out.per_exponent[q] = info;
    }

    out.kind = df_estimate::flavor::undecided;
    out.d_f = q_hi + 1;
    for (int q = q_lo; q <= q_hi; ++q) {
        if (out.per_exponent.at(q).trend == sum_trend::convergent) {
            out.d_f = q;
            if (q == q_lo)
                out.kind = df_estimate::flavor::at_floor;
            else if (out.per_exponent.at(q - 1).trend == sum_trend::divergent)
                out.kind = df_estimate::flavor::exact;
            else
                out.kind = df_estimate::flavor::undecided;
            break;
        }
    }
    if (out.d_f == q_hi + 1)
        out.kind = out.per_exponent.at(q_hi).trend == sum_trend::divergent
                       ? df_estimate::flavor::above_range
                       : df_estimate::flavor::undecided;
    return out;
}

series_value delta_fp(const entire_fn& f, int p, cplx z, std::size_t trunc) {
    if (p < 0) fail(errc::validation, "p must be >= 0");
    require_simple(f, "delta_fp");
    check_pole(f, z);
    trunc = std::min(trunc, f.by_abs().size());
    f.ensure_derivatives(f.by_abs().size());

    double R = window_beyond(f, trunc);
    cplx inv_f = std::exp(-f.eval_log(z, R));

    cplx sum = 0.0;
    for (std::size_t k = 0; k < trunc; ++k) {
        std::size_t j = f.by_abs()[k];
        double lam = f.zeros()[j].x;
        auto d = f.deriv_log(j);
        cplx t = z / lam;
        cplx tp = 1.0;
        for (int i = 0; i < p; ++i) tp *= t;
        sum += tp * d.sign * std::exp(-d.log_abs) / (z - lam);
    }
    cplx chi = 0.0;
    if (f.order_at_origin() == 1) chi = 1.0 / (f.leading() * z);

    series_value out;
    out.value = inv_f - chi - sum;

    kahan stored;
    for (std::size_t k = trunc; k < f.by_abs().size(); ++k) {
        std::size_t j = f.by_abs()[k];
        double lam = f.zeros()[j].x;
        stored.add(std::pow(std::abs(z / lam), p) * std::exp(-f.deriv_log(j).log_abs) /
                   std::abs(z - lam));
    }
    auto model = partial_fraction_tail(f, p, z);
    if (model) out.tail_bound = stored.value() + *model;
    return out;
}

mfp_value m_fp(const entire_fn& f, int p, cplx z, std::size_t trunc) {
    if (p < 0 || p > 4) fail(errc::validation, "m_fp supports 0 <= p <= 4");
    require_simple(f, "m_fp");
    check_pole(f, z);
    trunc = std::min(trunc, f.by_abs().size());
    f.ensure_derivatives(f.by_abs().size());

    double Rall = f.max_abs_zero() * (1.0 + 1e-9) + 1e-9;
    bool chi = f.order_at_origin() == 1;
    auto g = [&](double x) {
        cplx v = std::exp(-f.eval_log(x, Rall));
        if (chi) v -= 1.0 / (f.leading() * x);
        return v.real();
    };

    mfp_value out;
    if (p > 0) {
        // five-point stencils, step refined until two estimates agree
        double lmin = f.zeros().empty() ? 1.0 : std::abs(f.zeros()[f.by_abs().front()].x);
        double h = std::min(0.05, lmin / 8.0);
        std::vector<double> best(static_cast<std::size_t>(p), 0.0);
        std::vector<double> prev(static_cast<std::size_t>(p), std::numeric_limits<double>::quiet_NaN());
        for (int it = 0; it < 24; ++it, h *= 0.5) {
            double g1 = g(h), g2 = g(2 * h), gm1 = g(-h), gm2 = g(-2 * h);
            double g0 = chi ? 0.5 * (g1 + gm1) : 1.0 / f.leading();
            std::vector<double> cur(static_cast<std::size_t>(p));
            for (int k = 0; k < p; ++k) {
                double dk = 0.0;
                switch (k) {
                case 0: dk = g0; break;
                case 1: dk = (-g2 + 8 * g1 - 8 * gm1 + gm2) / (12 * h); break;
                case 2: dk = (-g2 + 16 * g1 - 30 * g0 + 16 * gm1 - gm2) / (12 * h * h) / 2.0; break;
                case 3: dk = (g2 - 2 * g1 + 2 * gm1 - gm2) / (2 * h * h * h) / 6.0; break;
                }
                cur[std::size_t(k)] = dk; // g^{(k)}(0) / k!
            }
            bool stable = !std::isnan(prev[0]);
            for (int k = 0; stable && k < p; ++k)
                stable = std::abs(cur[std::size_t(k)] - prev[std::size_t(k)]) <=
                         1e-9 * std::max(1.0, std::abs(cur[std::size_t(k)]));
            best = cur;
            if (stable) break;
            prev = cur;
        }
        out.taylor = best;
    }

    cplx sum = 0.0;
    for (std::size_t k = 0; k < trunc; ++k) {
        std::size_t j = f.by_abs()[k];
        double lam = f.zeros()[j].x;
        auto d = f.deriv_log(j);
        cplx t = z / lam;
        cplx tp = 1.0;
        for (int i = 0; i < p; ++i) tp *= t;
        sum += tp * d.sign * std::exp(-d.log_abs) / (z - lam);
    }
    out.value = sum;
    if (chi) out.value += 1.0 / (f.leading() * z);
    cplx zp = 1.0;
    for (int k = 0; k < p; ++k) {
        out.value += out.taylor[std::size_t(k)] * zp;
        zp *= z;
    }
    kahan stored;
    for (std::size_t k = trunc; k < f.by_abs().size(); ++k) {
        std::size_t j = f.by_abs()[k];
        double lam = f.zeros()[j].x;
        stored.add(std::pow(std::abs(z / lam), p) * std::exp(-f.deriv_log(j).log_abs) /
                   std::abs(z - lam));
    }
    auto model = partial_fraction_tail(f, p, z);
    if (model) out.tail_bound = stored.value() + *model;
    return out;
}

identity_report check_hamburger_identity(const entire_fn& f, const std::vector<cplx>& z_list,
                                         std::size_t trunc) {
    require_simple(f, "check_hamburger_identity");
    trunc = std::min(trunc, f.by_abs().size());
    f.ensure_derivatives(f.by_abs().size());
    double R = window_beyond(f, trunc);

    identity_report rep;
    for (cplx z : z_list) {
        check_pole(f, z);
        cplx lhs = std::exp(-f.eval_log(z, R));
        cplx rhs = 0.0;
        kahan mag;
        for (std::size_t k = 0; k < trunc; ++k) {
            std::size_t j = f.by_abs()[k];
            double lam = f.zeros()[j].x;
            auto d = f.deriv_log(j);
            cplx term = d.sign * std::exp(-d.log_abs) / (z - lam);
            rhs += term;
            mag.add(std::abs(term));
        }
        if (f.order_at_origin() == 1) {
            rhs += 1.0 / (f.leading() * z);
            mag.add(std::abs(1.0 / (f.leading() * z)));
        }
        kahan stored;
        for (std::size_t k = trunc; k < f.by_abs().size(); ++k) {
            std::size_t j = f.by_abs()[k];
            stored.add(std::exp(-f.deriv_log(j).log_abs) / std::abs(z - f.zeros()[j].x));
        }
        auto model = partial_fraction_tail(f, 0, z);
        double slack = 1e-12 * (1.0 + std::abs(lhs) + mag.value());
        identity_report::at_z pt;
        pt.z = z;
        pt.lhs = lhs;
        pt.rhs = rhs;
        pt.abs_err = std::abs(lhs - rhs);
        pt.bound =
            model ? stored.value() + *model + slack : std::numeric_limits<double>::quiet_NaN();
        rep.points.push_back(pt);
        if (pt.abs_err > rep.worst_err) {
            rep.worst_err = pt.abs_err;
            rep.worst_z = z;
        }
        if (!std::isnan(pt.bound) && pt.abs_err > pt.bound) rep.identity_holds = false;
    }

    double kappa = density_exponent(f);
    bool complete = f.tail().k == tail_model::kind::none;
    const auto& order = f.by_abs();
    for (int n = 0; n <= 3; ++n) {
        std::vector<double> sums;
        std::vector<double> log_g(order.size());
        kahan s;
        for (std::size_t k = 0; k < order.size(); ++k) {
            std::size_t j = order[k];
            double lam = f.zeros()[j].x;
            double lg = n * std::log(std::abs(lam)) -
                        (f.deriv_log(j).log_abs + tail_log_correction(f, lam));
            log_g[k] = lg;
            s.add(std::exp(lg));
            sums.push_back(s.value());
        }
        rep.power_sums.push_back(std::move(sums));
        rep.power_trends.push_back(complete ? sum_trend::convergent
                                            : classify_sum(safe_slope(f, log_g), kappa));
    }

    if (!rep.identity_holds)
        fail(errc::assertion_failure,
             "partial-fraction identity violated: |1/f - sum| = " + format17(rep.worst_err) +
                 " at z = " + format17(rep.worst_z.real()) + " + " +
                 format17(rep.worst_z.imag()) + "i exceeds the tail bound");
    return rep;
}

namespace {

tristate growth_condition(const entire_fn& f, std::string& note) {
    if (f.two_sided()) {
        note = "two-sided zeros: exponential type granted by the product representation";
        return tristate::yes;
    }
    double rmax = f.max_abs_zero();
    if (rmax == 0.0 || f.zeros().size() < 4) {
        note = "too few zeros to probe growth";
        return tristate::undecided;
    }
    std::vector<double> radii = {rmax / 16, rmax / 8, rmax / 4, rmax / 2};
    auto te = exp_type_estimate(f, radii);
    if (te.minimal_type_flag) {
        note = "one-sided zeros with decaying type trend";
        return tristate::yes;
    }
    note = "one-sided zeros without a clear minimal-type trend";
    return tristate::undecided;
}

} // namespace

class_evidence class_predicate_krein(const entire_fn& f) {
    class_evidence ev;
    if (!f.all_simple()) {
        ev.verdict = tristate::no;
        ev.notes["structure"] = "zeros not all real simple";
        return ev;
    }
    ev.notes["structure"] = "real simple zeros";
    std::string gnote;
    tristate growth = growth_condition(f, gnote);
    ev.notes["growth"] = gnote;

    f.ensure_derivatives(f.by_abs().size());
    const auto& order = f.by_abs();
    std::vector<double> log_g(order.size());
    kahan s;
    for (std::size_t k = 0; k < order.size(); ++k) {
        std::size_t j = order[k];
        double lam = f.zeros()[j].x;
        log_g[k] = -std::log1p(lam * lam) - (f.deriv_log(j).log_abs + tail_log_correction(f, lam));
        s.add(std::exp(log_g[k]));
    }
    sum_trend trend = f.tail().k == tail_model::kind::none
                          ? sum_trend::convergent
                          : classify_sum(safe_slope(f, log_g), density_exponent(f));
    ev.notes["sum_1_over_(1+l2)|f'|"] = "partial sum " + format17(s.value());
    ev.notes["condition_3314c"] = trend == sum_trend::convergent    ? "convergent"
                                  : trend == sum_trend::divergent ? "divergent"
                                                                  : "undecided";
    if (trend == sum_trend::divergent)
        ev.verdict = tristate::no;
    else if (trend == sum_trend::convergent && growth == tristate::yes)
        ev.verdict = tristate::yes;
    else
        ev.verdict = tristate::undecided;
    return ev;
}

class_evidence class_predicate_hamburger(const entire_fn& f) {
    class_evidence ev;
    if (!f.all_simple()) {
        ev.verdict = tristate::no;
        ev.notes["structure"] = "zeros not all real simple";
        return ev;
    }
    ev.notes["structure"] = "real simple zeros";
    std::string gnote;
    tristate growth = growth_condition(f, gnote);
    ev.notes["growth"] = gnote;

    f.ensure_derivatives(f.by_abs().size());
    bool complete = f.tail().k == tail_model::kind::none;
    const auto& order = f.by_abs();
    tristate cond = tristate::yes;
    for (int n = 0; n <= 3 && cond != tristate::no; ++n) {
        std::vector<double> log_g(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            std::size_t j = order[k];
            double lam = f.zeros()[j].x;
            log_g[k] = n * std::log(std::abs(lam)) -
                       (f.deriv_log(j).log_abs + tail_log_correction(f, lam));
        }
        double slope = safe_slope(f, log_g);
        ev.notes["ratio_slope_n" + std::to_string(n)] =
            std::isnan(slope) ? "n/a" : format17(slope);
        if (complete) continue;
        if (std::isnan(slope)) { cond = tristate::undecided; continue; }
        if (slope >= -0.02)
            cond = tristate::no;
        else if (slope > -0.05 && cond == tristate::yes)
            cond = tristate::undecided;
    }
    ev.notes["condition_3315c"] = tristate_name(cond);
    if (cond == tristate::no)
        ev.verdict = tristate::no;
    else if (cond == tristate::yes && growth == tristate::yes)
        ev.verdict = tristate::yes;
    else
        ev.verdict = tristate::undecided;
    return ev;
}

double delta_f_R(const entire_fn& f, double R) {
    if (!(R > 0.0)) fail(errc::validation, "delta_f needs R > 0");
    kahan s;
    for (std::size_t j : f.by_abs()) {
        const auto& ze = f.zeros()[j];
        if (std::abs(ze.x) >= R) break;
        s.add(ze.mult / ze.x);
    }
    return s.value();
}

log_integral_result log_integral(const entire_fn& f, double R, int nodes) {
    if (!(R > 0.0) || nodes < 4) fail(errc::validation, "log_integral needs R > 0, nodes >= 4");
    double Rall = std::max(f.max_abs_zero() * (1.0 + 1e-9) + 1e-9, 2.0 * R);
    auto integrate = [&](int N) {
        double h = 2.0 * R / N;
        kahan plus, abs_;
        for (int i = 0; i < N; ++i) {
            double t = -R + (i + 0.5) * h;
            if (f.find_zero(t) != std::size_t(-1) ||
                (f.order_at_origin() > 0 && std::abs(t) < h * 1e-3))
                t += h * 1e-3;
            double lg = f.eval_log(t, Rall).real();
            double w = 1.0 + t * t;
            plus.add(std::max(lg, 0.0) / w * h);
            abs_.add(std::abs(lg) / w * h);
        }
        return std::pair<double, double>(plus.value(), abs_.value());
    };
    auto full = integrate(nodes);
    auto half = integrate(std::max(4, nodes / 2));
    log_integral_result out;
    out.i_plus = full.first;
    out.i_abs = full.second;
    out.err_plus = std::abs(full.first - half.first) / 3.0;
    out.err_abs = std::abs(full.second - half.second) / 3.0;
    return out;
}

type_estimate_result exp_type_estimate(const entire_fn& f, const std::vector<double>& radii) {
    if (radii.empty()) fail(errc::validation, "need at least one radius");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) fail(errc::validation, "radii must increase");
    double rmax_zero = f.max_abs_zero();
    if (!f.zeros().empty() && f.tail().k != tail_model::kind::none &&
        radii.back() > rmax_zero)
        fail(errc::tail_model_missing,
             "radius " + format17(radii.back()) + " beyond the stored zeros");
    double Rall = std::max(rmax_zero * (1.0 + 1e-9), 2.0 * radii.back()) + 1e-9;

    type_estimate_result out;
    out.radii = radii;
    for (double r : radii) {
        double m = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 64; ++k) {
            double phi = 2.0 * M_PI * k / 64 + M_PI / 128;
            m = std::max(m, f.eval_log(std::polar(r, phi), Rall).real());
        }
        out.type_at_radius.push_back(m / r);
    }
    out.type_estimate = out.type_at_radius.back();
    out.trend_slope = radii.size() >= 2 ? fit_slope(radii, out.type_at_radius) : 0.0;
    out.minimal_type_flag =
        out.trend_slope < 0.0 &&
        out.type_at_radius.back() <= 0.5 * std::max(out.type_at_radius.front(), 1e-12);
    return out;
}

entire_fn multiply_by_polynomial(const entire_fn& f, const std::vector<double>& q_zeros,
                                 double q_at0) {
    if (q_at0 == 0.0) fail(errc::validation, "Q(0) must be nonzero");
    auto zeros = f.zeros();
    double recip_q = 0.0;
    for (double q : q_zeros) {
        if (!(std::abs(q) > 0.0)) fail(errc::validation, "Q zeros must be nonzero");
        if (f.find_zero(q) != std::size_t(-1))
            fail(errc::shared_zero, "Q shares the zero at " + format17(q));
        zeros.push_back({q, 1});
        recip_q += 1.0 / q;
    }
    double a = f.genus() == 1 ? f.balance() + recip_q : 0.0;
    return entire_fn(f.order_at_origin(), f.leading() * q_at0, f.genus(), a, std::move(zeros),
                     f.tail());
}

} // namespace polyden
