#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "polyden/errors.hpp"
#include "polyden/num.hpp"

namespace polyden {

struct zero_entry {
    double x;
    int mult = 1;
};

/// Truncation-error model for the unseen zeros beyond the stored range.
///   none        — the stored list is complete (polynomial-sense data)
///   power(k, A) — zero density per side is at most A |t|^k out there
///   unspecified — nothing declared; quantities needing the tail are
///                 reported without bounds or refuse to extrapolate
struct tail_model {
    enum class kind { unspecified, none, power };
    kind k = kind::unspecified;
    double exponent = 0.0;
    double coeff = 0.0;

    static tail_model complete() { return {kind::none, 0.0, 0.0}; }
    static tail_model power_law(double expo, double coeff) {
        return {kind::power, expo, coeff};
    }
};

/// sign * exp(log_abs); keeps products of 2e4 factors out of overflow
struct signed_log {
    double log_abs = -std::numeric_limits<double>::infinity();
    double sign = 0.0;
    double value() const { return sign * std::exp(log_abs); }
};

struct eval_result {
    cplx value;
    std::optional<double> tail_log_bound; // bound on |log f_true - log f_partial|
};

struct deriv_result {
    double value;
    signed_log log_form;
    std::optional<double> tail_log_bound;
};

/// Real entire function given by zero data:
///   genus 0:  f(z) = c z^m  prod (1 - z/lambda)                (symmetric limit)
///   genus 1:  f(z) = c z^m e^{-a z} prod (1 - z/lambda) e^{z/lambda}
/// `a` is the balancing coefficient of the two-sided reciprocal-zero sums;
/// for genus 0 it must be 0.
class entire_fn {
public:
    entire_fn(int m, double c, int genus, double a, std::vector<zero_entry> zeros,
              tail_model tail = {});

    entire_fn(const entire_fn& o)
        : m_(o.m_), c_(o.c_), genus_(o.genus_), a_(o.a_), zeros_(o.zeros_), tail_(o.tail_),
          by_abs_(o.by_abs_) {
        std::lock_guard<std::mutex> lock(o.dmutex_);
        dcache_ = o.dcache_;
        dcached_ = o.dcached_;
    }
    entire_fn& operator=(const entire_fn& o) {
        if (this != &o) {
            entire_fn tmp(o);
            m_ = tmp.m_; c_ = tmp.c_; genus_ = tmp.genus_; a_ = tmp.a_;
            zeros_ = std::move(tmp.zeros_);
            tail_ = tmp.tail_;
            by_abs_ = std::move(tmp.by_abs_);
            dcache_ = std::move(tmp.dcache_);
            dcached_ = std::move(tmp.dcached_);
        }
        return *this;
    }

    int order_at_origin() const { return m_; }
    double leading() const { return c_; }
    int genus() const { return genus_; }
    double balance() const { return a_; }
    const std::vector<zero_entry>& zeros() const { return zeros_; }
    const tail_model& tail() const { return tail_; }
    /// zero indices sorted by ascending |x| (ties: negative first)
    const std::vector<std::size_t>& by_abs() const { return by_abs_; }
    double max_abs_zero() const;
    bool all_simple() const;
    bool two_sided() const;
    std::size_t zero_count_with_mult() const;

    /// index of the zero equal to lambda (1e-12 relative), or npos
    std::size_t find_zero(double lambda) const;

    /// complex log of the product over |lambda| < R (plus c, z^m and the
    /// exponential factors); Re part is log|f(z)|
    cplx eval_log(cplx z, double R) const;

    /// f'(lambda_j) over the stored zeros, log form, cached (simple zeros)
    signed_log deriv_log(std::size_t j) const;
    void ensure_derivatives(std::size_t first_k_by_abs) const;

    /// empirical envelope for 1/|f'| over the outer stored zeros:
    /// log(1/|f'(t)|) <= beta * log t + logC (fit with documented 4x slack)
    struct deriv_envelope {
        double beta = 0.0;
        double logC = 0.0;
        bool reliable = false;
    };
    deriv_envelope fit_deriv_envelope() const;

    /// sum over stored zeros with |lambda| >= R of |lambda|^(-s), plus the
    /// declared tail model's integral beyond the stored range; nullopt when
    /// the model is unspecified (or does not integrate)
    std::optional<double> reciprocal_power_tail(double R, double s) const;

    /// deriv_log plus the estimated log of the omitted tail factor — the
    /// asymptotically faithful derivative number for trend analysis
    double corrected_deriv_log_abs(std::size_t j) const;
    /// log-log slope of per-zero samples (indexed like by_abs) over the
    /// window where truncation distortion is provably small; NaN if the
    /// window is too thin
    double asymptotic_slope(const std::vector<double>& log_g_by_abs) const;
    /// declared or empirically fitted zero-density exponent
    double density_exponent_est() const;

private:
    int m_;
    double c_;
    int genus_;
    double a_;
    std::vector<zero_entry> zeros_;
    tail_model tail_;
    std::vector<std::size_t> by_abs_;
    mutable std::vector<signed_log> dcache_;
    mutable std::vector<char> dcached_;
    mutable std::mutex dmutex_;
};

eval_result eval(const entire_fn& f, cplx z, double R);

/// removed-factor derivative at a simple zero (MultipleZero otherwise)
deriv_result derivative_at_zero(const entire_fn& f, double lambda);

/// f^{(m_k)}(lambda) at a zero of multiplicity m_k
deriv_result derivative_order_mk(const entire_fn& f, double lambda);

enum class sum_trend { convergent, divergent, undecided };

/// integral-test classification of a sum over zeros: summand ~ t^slope
/// against zero density ~ t^kappa
inline sum_trend classify_sum(double slope, double kappa) {
    if (std::isnan(slope)) return sum_trend::undecided;
    double s = slope + kappa;
    if (s <= -1.08) return sum_trend::convergent;
    if (s >= -1.02) return sum_trend::divergent;
    return sum_trend::undecided;
}

inline const char* sum_trend_name(sum_trend t) {
    switch (t) {
    case sum_trend::convergent: return "CONVERGENT";
    case sum_trend::divergent: return "DIVERGENT";
    case sum_trend::undecided: return "UNDECIDED";
    }
    return "?";
}

struct df_estimate {
    int d_f = 0;
    enum class flavor { exact, at_floor, above_range, undecided } kind = flavor::undecided;
    struct per_q {
        double partial_sum;
        double slope; // log-log decay of the summand, density folded in
        sum_trend trend;
    };
    std::map<int, per_q> per_exponent;
};

/// Heuristic estimate of d_f (3.1.6) by partial sums with decay extrapolation.
df_estimate estimate_df(const entire_fn& f, int q_lo, int q_hi);

struct series_value {
    cplx value;
    std::optional<double> tail_bound; // bound on the omitted summands' modulus
};

/// Delta_f^p(z) partial sum of (3.1.7) over the first `trunc` zeros by |lambda|.
series_value delta_fp(const entire_fn& f, int p, cplx z, std::size_t trunc);

/// m_f^p(z) of (3.1.8); Taylor data of 1/f at 0 by 5-point central differences.
struct mfp_value {
    cplx value;
    std::optional<double> tail_bound;
    std::vector<double> taylor; // g^{(k)}(0)/k! for k = 0..p-1
};
mfp_value m_fp(const entire_fn& f, int p, cplx z, std::size_t trunc);

struct identity_report {
    struct at_z {
        cplx z;
        cplx lhs, rhs;
        double abs_err;
        double bound;
    };
    std::vector<at_z> points;
    double worst_err = 0.0;
    cplx worst_z;
    // (3.1.9b) partial sums of |lambda|^n / |f'(lambda)| for n = 0..3
    std::vector<std::vector<double>> power_sums;
    std::vector<sum_trend> power_trends;
    bool identity_holds = true;
};

/// (3.1.9a) check at each z plus the (3.1.9b) growth report.
/// Throws AssertionFailure (with the worst z) if any point exceeds its bound.
identity_report check_hamburger_identity(const entire_fn& f, const std::vector<cplx>& z_list,
                                         std::size_t trunc);

struct class_evidence {
    tristate verdict = tristate::undecided;
    std::map<std::string, std::string> notes;
};

/// Corollary 3.1 membership: Krein class via (3.3.14a,b,c).
class_evidence class_predicate_krein(const entire_fn& f);
/// Hamburger class via (3.3.15a,b,c).
class_evidence class_predicate_hamburger(const entire_fn& f);

/// delta_f(R) = sum of 1/lambda over stored zeros in (-R, R), (3.1.5)
double delta_f_R(const entire_fn& f, double R);

struct log_integral_result {
    double i_plus;      // integral of log+|f| / (1+t^2) over [-R, R]
    double i_abs;       // integral of |log|f|| / (1+t^2)
    double err_plus;    // Richardson estimates
    double err_abs;
};
log_integral_result log_integral(const entire_fn& f, double R, int nodes);

struct type_estimate_result {
    std::vector<double> radii;
    std::vector<double> type_at_radius; // max over 64 circle points of log|f| / r
    double type_estimate;               // value at the largest radius
    double trend_slope;                 // of type vs radius
    bool minimal_type_flag;
};
type_estimate_result exp_type_estimate(const entire_fn& f, const std::vector<double>& radii);

/// multiply by Q(x) = q_at0 * prod (1 - x/q): zeros merged, genus-1 balance
/// adjusted; SharedZero if Q touches an existing zero.
entire_fn multiply_by_polynomial(const entire_fn& f, const std::vector<double>& q_zeros,
                                 double q_at0 = 1.0);

} // namespace polyden
