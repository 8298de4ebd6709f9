#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace polyden {

using cplx = std::complex<double>;

/// Serialize a double with 17 significant digits (lossless round trip).
inline std::string format17(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, p);
}

/// log(1+w) for complex w, accurate for small |w|.
inline cplx log1p_c(cplx w) {
    if (std::abs(w) > 1e-4) return std::log(1.0 + w);
    // series: w - w^2/2 + w^3/3 - w^4/4
    cplx w2 = w * w;
    return w - w2 / 2.0 + w2 * w / 3.0 - w2 * w2 / 4.0;
}

/// log(1+w) + (-w), i.e. log((1+w)e^{-w}), stable when w is tiny.
inline cplx log1p_minus(cplx w) {
    if (std::abs(w) > 1e-3) return std::log(1.0 + w) - w;
    cplx w2 = w * w;
    return -w2 / 2.0 + w2 * w / 3.0 - w2 * w2 / 4.0 + w2 * w2 * w / 5.0;
}

/// Compensated (Kahan) accumulator for deterministic long sums.
struct kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// Deterministic xorshift-free PRNG: std::mt19937_64 with hand-rolled
/// scalings so results do not depend on libstdc++ distribution internals.
class rng {
public:
    explicit rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// uniform in [0,1)
    double u01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform in [a,b)
    double uniform(double a, double b) { return a + (b - a) * u01(); }

    /// integer in [0,n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t s_;
};

inline bool nearly_equal(double a, double b, double rel, double abs_floor = 0.0) {
    double d = std::abs(a - b);
    return d <= abs_floor + rel * std::max(std::abs(a), std::abs(b));
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= double(n); my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

enum class tristate { no, yes, undecided };

inline const char* tristate_name(tristate t) {
    switch (t) {
    case tristate::no: return "false";
    case tristate::yes: return "true";
    case tristate::undecided: return "undecided";
    }
    return "?";
}

} // namespace polyden
