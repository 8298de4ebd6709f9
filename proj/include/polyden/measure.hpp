#pragma once

#include <functional>
#include <mutex>
#include <vector>

#include "polyden/errors.hpp"
#include "polyden/num.hpp"

namespace polyden {

struct atom {
    double x;
    double mass;
};

enum class tilt_mode { plain, alpha, alpha2 };

/// Finitely supported positive measure with lazily cached power moments.
/// Atoms are kept sorted by position, strictly increasing; moments are
/// accumulated in a fixed order (ascending |x|, ties by ascending x) so
/// repeated runs are bit-identical.
class discrete_measure {
public:
    /// Sorts and merges; throws Validation on non-positive masses or
    /// non-finite coordinates, EmptyMeasure when no atoms remain.
    explicit discrete_measure(std::vector<atom> atoms);

    discrete_measure(const discrete_measure& o)
        : atoms_(o.atoms_), sum_order_(o.sum_order_) {
        std::lock_guard<std::mutex> lock(o.cache_mutex_);
        moment_cache_ = o.moment_cache_;
        abs_moment_cache_ = o.abs_moment_cache_;
    }
    discrete_measure& operator=(const discrete_measure& o) {
        if (this != &o) {
            discrete_measure tmp(o);
            atoms_ = std::move(tmp.atoms_);
            sum_order_ = std::move(tmp.sum_order_);
            moment_cache_ = std::move(tmp.moment_cache_);
            abs_moment_cache_ = std::move(tmp.abs_moment_cache_);
        }
        return *this;
    }
    discrete_measure(discrete_measure&& o) noexcept
        : atoms_(std::move(o.atoms_)), sum_order_(std::move(o.sum_order_)),
          moment_cache_(std::move(o.moment_cache_)),
          abs_moment_cache_(std::move(o.abs_moment_cache_)) {}
    discrete_measure& operator=(discrete_measure&& o) noexcept {
        atoms_ = std::move(o.atoms_);
        sum_order_ = std::move(o.sum_order_);
        moment_cache_ = std::move(o.moment_cache_);
        abs_moment_cache_ = std::move(o.abs_moment_cache_);
        return *this;
    }

    const std::vector<atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_mass() const;

    /// s_0..s_n_max with s_n = sum mass_i x_i^n; extends the cache.
    std::vector<double> moments(int n_max) const;
    /// absolute moments sum mass_i |x_i|^n
    std::vector<double> abs_moments(int n_max) const;

    bool has_atom_at(double x, double tol = 0.0) const;

private:
    std::vector<atom> atoms_;
    std::vector<std::size_t> sum_order_; // ascending |x|, then x
    mutable std::vector<double> moment_cache_;
    mutable std::vector<double> abs_moment_cache_;
    mutable std::mutex cache_mutex_;
};

/// Tilted measures of (2.1.5): `alpha` scales masses by (1+|x|)^-a,
/// `alpha2` by |x|^a (1+|x|)^-a (dropping an atom at the origin).
discrete_measure tilt(const discrete_measure& mu, double a, tilt_mode mode);

/// Composite midpoint-rule discretization of a density on [a,b].
discrete_measure from_quadrature(const std::function<double(double)>& density,
                                 double a, double b, int nodes);

} // namespace polyden
