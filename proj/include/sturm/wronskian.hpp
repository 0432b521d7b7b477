#pragma once

// Numerical checks of the Wronskian identities for two eigenpairs psi_1, psi_2 (E_1 != E_2):
//   W = psi_1' psi_2 - psi_2' psi_1,   dW/dx = (E_2 - E_1) psi_1 psi_2,
// and its integral between consecutive zeros x_1 < x_2 of psi_1,
//   psi_1'(x_2) psi_2(x_2) - psi_1'(x_1) psi_2(x_1) = (E_2 - E_1) int_{x_1}^{x_2} psi_1 psi_2 dx.
// Derivatives are finite differences on the shared grid, never re-integrations of the ODE.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sturm/error.hpp"
#include "sturm/grid.hpp"
#include "sturm/nodes.hpp"
#include "sturm/solver.hpp"

namespace sturm {

struct WronskianSeries {
    int n1 = 0;
    int n2 = 0;
    std::vector<double> values;
    double dx = 0.0;
};

inline WronskianSeries wronskian_series(const Eigenpair& p1, const Eigenpair& p2) {
    detail::require_same_grid(p1, p2, "wronskian_series");
    const double dx = p1.grid.dx();
    const auto d1 = derivative(p1.psi, dx);
    const auto d2 = derivative(p2.psi, dx);
    WronskianSeries w{p1.n, p2.n, std::vector<double>(p1.psi.size()), dx};
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] = d1[i] * p2.psi[i] - d2[i] * p1.psi[i];
    return w;
}

struct DerivativeIdentityReport {
    double max_residual = 0.0;
    double at_x = 0.0;
    double dx = 0.0;
};

/// max over interior nodes of |dW/dx - (E_2 - E_1) psi_1 psi_2|, dW/dx by central differences.
inline DerivativeIdentityReport check_derivative_identity(const Eigenpair& p1, const Eigenpair& p2) {
    detail::require_same_grid(p1, p2, "check_derivative_identity");
    if (p1.n == p2.n) throw PreconditionError("check_derivative_identity: need two distinct states");
    const auto w = wronskian_series(p1, p2);
    const double de = p2.energy - p1.energy;
    DerivativeIdentityReport rep{0.0, 0.0, w.dx};
    for (std::size_t i = 1; i + 1 < w.values.size(); ++i) {
        const double dw = (w.values[i + 1] - w.values[i - 1]) / (2.0 * w.dx);
        const double r = std::abs(dw - de * p1.psi[i] * p2.psi[i]);
        if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.at_x = p1.grid.x(i);
        }
    }
    return rep;
}

struct IntervalIdentity {
    double x1 = 0.0;
    double x2 = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    int hump_sign = 0;                 // sign of psi_1 on (x1, x2)
    std::optional<double> witness;     // node of psi_2 inside, from verify_interlacing
    bool opposite_signs = false;       // only meaningful without a witness
};

struct IntegralIdentityReport {
    int n1 = 0;
    int n2 = 0;
    std::vector<IntervalIdentity> intervals;
    double max_residual = 0.0;
    bool all_witnessed = true;
};

namespace detail {

/// Linear interpolation of grid samples at x in [-a, a].
inline double sample_at(const Grid& g, std::span<const double> f, double x) {
    if (x <= g.x(0)) return f.front();
    if (x >= g.x(g.size() - 1)) return f.back();
    const double t = (x + g.a()) / g.dx();
    std::size_t i = std::min(static_cast<std::size_t>(t), g.size() - 2);
    while (i > 0 && g.x(i) > x) --i;
    while (i + 2 < g.size() && g.x(i + 1) < x) ++i;
    const double x0 = g.x(i), x1 = g.x(i + 1);
    const double s = (x - x0) / (x1 - x0);
    return f[i] + s * (f[i + 1] - f[i]);
}

/// Trapezoid integral of samples f over [lo, hi], with partial end cells interpolated linearly.
inline double integrate_between(const Grid& g, std::span<const double> f, double lo, double hi) {
    std::vector<double> xs;
    std::vector<double> fs;
    xs.push_back(lo);
    fs.push_back(sample_at(g, f, lo));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        if (x > lo && x < hi) {
            xs.push_back(x);
            fs.push_back(f[i]);
        }
    }
    xs.push_back(hi);
    fs.push_back(sample_at(g, f, hi));
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) s += 0.5 * (fs[i] + fs[i + 1]) * (xs[i + 1] - xs[i]);
    return s;
}

}  // namespace detail

inline IntegralIdentityReport check_integral_identity(const Eigenpair& p1, const Eigenpair& p2) {
    if (p1.n >= p2.n)
        throw PreconditionError("check_integral_identity: need n1 < n2 (got " + std::to_string(p1.n) + ", " +
                                std::to_string(p2.n) + ")");
    detail::require_same_grid(p1, p2, "check_integral_identity");
    const Grid& g = p1.grid;
    const double dx = g.dx();
    const double de = p2.energy - p1.energy;
    const auto d1 = derivative(p1.psi, dx);
    std::vector<double> product(p1.psi.size());
    for (std::size_t i = 0; i < product.size(); ++i) product[i] = p1.psi[i] * p2.psi[i];

    const auto interlace = verify_interlacing(p1, p2);
    IntegralIdentityReport rep{p1.n, p2.n, {}, 0.0, interlace.passed};
    for (std::size_t k = 0; k < interlace.intervals_checked.size(); ++k) {
        const auto [x1, x2] = interlace.intervals_checked[k];
        IntervalIdentity iv;
        iv.x1 = x1;
        iv.x2 = x2;
        iv.lhs = detail::sample_at(g, d1, x2) * detail::sample_at(g, p2.psi, x2) -
                 detail::sample_at(g, d1, x1) * detail::sample_at(g, p2.psi, x1);
        iv.rhs = de * detail::integrate_between(g, product, x1, x2);
        iv.residual = std::abs(iv.lhs - iv.rhs);
        const double mid = detail::sample_at(g, p1.psi, 0.5 * (x1 + x2));
        iv.hump_sign = (mid > 0.0) - (mid < 0.0);
        iv.witness = interlace.witnesses[k];
        if (!iv.witness) {
            // With psi_1 flipped positive on the hump and psi_2 of one sign s, the left side is
            // s * (negative) and the right side s * (positive).
            const double s2 = detail::sample_at(g, p2.psi, 0.5 * (x1 + x2)) >= 0.0 ? 1.0 : -1.0;
            iv.opposite_signs = (iv.hump_sign * s2 * iv.lhs) <= 0.0 && (iv.hump_sign * s2 * iv.rhs) >= 0.0;
        }
        rep.max_residual = std::max(rep.max_residual, iv.residual);
        rep.intervals.push_back(iv);
    }
    return rep;
}

}  // namespace sturm
