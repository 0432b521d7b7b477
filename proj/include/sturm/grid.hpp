#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sturm/error.hpp"
#include "sturm/potential.hpp"

namespace sturm {

/// Smallest grid the constructors accept. Solvers impose their own, larger minimum.
inline constexpr std::size_t kMinGridPoints = 3;

/// Uniform sampling of [-a, a] with the walled potential evaluated at every node.
///
/// Interior abscissae are computed as (i - center) * dx so that grids sharing a spacing
/// also share node coordinates bit for bit; the two wall nodes are exactly -a and a.
class Grid {
public:
    Grid(double half_width, double spacing, std::vector<double> v_samples)
        : a_(half_width), dx_(spacing), v_(std::move(v_samples)) {
        if (v_.size() < kMinGridPoints || v_.size() % 2 == 0)
            throw InvalidParameter("grid: n_points must be odd and >= " + std::to_string(kMinGridPoints));
        if (!(dx_ > 0.0) || !(a_ > 0.0)) throw InvalidParameter("grid: spacing and half width must be > 0");
    }

    double a() const { return a_; }
    double dx() const { return dx_; }
    std::size_t size() const { return v_.size(); }
    std::size_t center() const { return (v_.size() - 1) / 2; }

    double x(std::size_t i) const {
        if (i == 0) return -a_;
        if (i + 1 == v_.size()) return a_;
        return (static_cast<double>(i) - static_cast<double>(center())) * dx_;
    }

    std::vector<double> x_samples() const {
        std::vector<double> xs(size());
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x(i);
        return xs;
    }

    std::span<const double> v() const { return v_; }

    double v_min() const {
        double m = v_.front();
        for (double val : v_) m = std::min(m, val);
        return m;
    }

    friend bool operator==(const Grid& l, const Grid& r) {
        return l.a_ == r.a_ && l.dx_ == r.dx_ && l.v_ == r.v_;
    }

private:
    double a_;
    double dx_;
    std::vector<double> v_;
};

namespace detail {

/// Replaces point samples next to a jump of V by the mean of V over the node's dual cell
/// [x - dx/2, x + dx/2]. A point sample at a discontinuity costs the schemes an order of accuracy;
/// away from jumps the samples stay exact point values.
inline void average_across_jumps(const PotentialSpec& spec, double dx, std::span<const double> xs,
                                 std::vector<double>& v) {
    for (double xj : jump_points(spec)) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double lo = xs[i] - 0.5 * dx, hi = xs[i] + 0.5 * dx;
            if (!(xj > lo && xj < hi)) continue;
            const double left = evaluate(spec, 0.5 * (lo + xj));
            const double right = evaluate(spec, 0.5 * (xj + hi));
            v[i] = ((xj - lo) * left + (hi - xj) * right) / dx;
        }
    }
}

inline void require_odd(std::size_t n_points) {
    if (n_points < kMinGridPoints || n_points % 2 == 0)
        throw InvalidParameter("grid: n_points must be odd and >= " + std::to_string(kMinGridPoints) +
                               " (got " + std::to_string(n_points) + ")");
}
}  // namespace detail

inline Grid build_grid(const WalledPotential& wp, std::size_t n_points) {
    detail::require_odd(n_points);
    const double a = wp.half_width();
    const double dx = 2.0 * a / static_cast<double>(n_points - 1);
    const double c = static_cast<double>((n_points - 1) / 2);
    std::vector<double> v(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        double x = (static_cast<double>(i) - c) * dx;
        if (i == 0) x = -a;
        if (i + 1 == n_points) x = a;
        v[i] = wp(x);
    }
    Grid g(a, dx, std::move(v));
    auto samples = std::vector<double>(g.v().begin(), g.v().end());
    detail::average_across_jumps(wp.base(), dx, g.x_samples(), samples);
    return Grid(a, dx, std::move(samples));
}

/// Grid on [-m dx, m dx]. Grids built from the same spacing are nested sub-lattices of one another.
inline Grid build_grid_with_spacing(const PotentialSpec& spec, double dx, std::size_t half_cells) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw InvalidParameter("grid: spacing must be > 0");
    if (half_cells < 1) throw InvalidParameter("grid: need at least one cell per side");
    const double a = static_cast<double>(half_cells) * dx;
    const std::size_t n_points = 2 * half_cells + 1;
    std::vector<double> v(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double x = (static_cast<double>(i) - static_cast<double>(half_cells)) * dx;
        v[i] = evaluate(spec, x);
    }
    Grid g(a, dx, std::move(v));
    auto samples = std::vector<double>(g.v().begin(), g.v().end());
    detail::average_across_jumps(spec, dx, g.x_samples(), samples);
    return Grid(a, dx, std::move(samples));
}

/// Trapezoid rule for samples on a uniform grid.
inline double trapezoid(std::span<const double> f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dx;
}

inline double trapezoid_product(std::span<const double> f, std::span<const double> g, double dx) {
    const std::size_t n = std::min(f.size(), g.size());
    if (n < 2) return 0.0;
    double s = 0.5 * (f[0] * g[0] + f[n - 1] * g[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) s += f[i] * g[i];
    return s * dx;
}

}  // namespace sturm
