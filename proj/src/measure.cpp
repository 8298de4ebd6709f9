#include "polyden/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polyden {

discrete_measure::discrete_measure(std::vector<atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) fail(errc::empty_measure, "measure has no atoms");
    for (const auto& a : atoms_) {
        if (!std::isfinite(a.x)) fail(errc::validation, "atom position not finite");
        if (!(a.mass > 0.0) || !std::isfinite(a.mass))
            fail(errc::validation, "atom mass must be positive, got " + format17(a.mass) +
                                        " at x=" + format17(a.x));
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const atom& l, const atom& r) { return l.x < r.x; });
    // merge coincident positions so the support is strictly increasing
    std::vector<atom> merged;
    merged.reserve(atoms_.size());
    for (const auto& a : atoms_) {
        if (!merged.empty() && merged.back().x == a.x)
            merged.back().mass += a.mass;
        else
            merged.push_back(a);
    }
    atoms_ = std::move(merged);

    sum_order_.resize(atoms_.size());
    std::iota(sum_order_.begin(), sum_order_.end(), std::size_t{0});
    std::sort(sum_order_.begin(), sum_order_.end(), [&](std::size_t i, std::size_t j) {
        double ai = std::abs(atoms_[i].x), aj = std::abs(atoms_[j].x);
        if (ai != aj) return ai < aj;
        return atoms_[i].x < atoms_[j].x;
    });
}

double discrete_measure::total_mass() const {
    kahan s;
    for (std::size_t i : sum_order_) s.add(atoms_[i].mass);
    return s.value();
}

namespace {

void extend_cache(const std::vector<atom>& atoms, const std::vector<std::size_t>& order,
                  std::vector<double>& cache, int n_max, bool absolute) {
    for (int n = int(cache.size()); n <= n_max; ++n) {
        kahan s;
        for (std::size_t i : order) {
            double xn = std::pow(absolute ? std::abs(atoms[i].x) : atoms[i].x, n);
            s.add(atoms[i].mass * xn);
        }
        cache.push_back(s.value());
    }
}

} // namespace

std::vector<double> discrete_measure::moments(int n_max) const {
    if (n_max < 0) fail(errc::validation, "n_max must be >= 0");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    extend_cache(atoms_, sum_order_, moment_cache_, n_max, false);
    return std::vector<double>(moment_cache_.begin(), moment_cache_.begin() + n_max + 1);
}

std::vector<double> discrete_measure::abs_moments(int n_max) const {
    if (n_max < 0) fail(errc::validation, "n_max must be >= 0");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    extend_cache(atoms_, sum_order_, abs_moment_cache_, n_max, true);
    return std::vector<double>(abs_moment_cache_.begin(), abs_moment_cache_.begin() + n_max + 1);
}

bool discrete_measure::has_atom_at(double x, double tol) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x - tol,
                               [](const atom& a, double v) { return a.x < v; });
    return it != atoms_.end() && std::abs(it->x - x) <= tol;
}

discrete_measure tilt(const discrete_measure& mu, double a, tilt_mode mode) {
    if (a < 1.0) fail(errc::validation, "tilt exponent must be >= 1");
    if (mode == tilt_mode::plain) return mu;
    std::vector<atom> out;
    out.reserve(mu.size());
    for (const auto& at : mu.atoms()) {
        double ax = std::abs(at.x);
        double factor = mode == tilt_mode::alpha
                            ? std::pow(1.0 + ax, -a)
                            : std::pow(ax, a) * std::pow(1.0 + ax, -a);
        double m = at.mass * factor;
        if (m > 0.0) out.push_back({at.x, m});
    }
    if (out.empty())
        fail(errc::empty_measure, "alpha2 tilt emptied the measure (support = {0})");
    return discrete_measure(std::move(out));
}

discrete_measure from_quadrature(const std::function<double(double)>& density,
                                 double a, double b, int nodes) {
    if (nodes < 2) fail(errc::validation, "from_quadrature needs at least 2 nodes");
    if (!(a < b)) fail(errc::validation, "from_quadrature needs a < b");
    double h = (b - a) / nodes;
    std::vector<atom> out;
    out.reserve(std::size_t(nodes));
    for (int i = 0; i < nodes; ++i) {
        double x = a + (i + 0.5) * h;
        double d = density(x);
        if (d < 0.0 || !std::isfinite(d))
            fail(errc::validation, "density must be nonnegative and finite at x=" + format17(x));
        if (d > 0.0) out.push_back({x, d * h});
    }
    if (out.empty()) fail(errc::empty_measure, "density vanishes at every quadrature node");
    return discrete_measure(std::move(out));
}

} // namespace polyden
