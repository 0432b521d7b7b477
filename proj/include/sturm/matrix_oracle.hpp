#pragma once

// Independent cross-check for the shooting solver: the second-order finite-difference
// Hamiltonian on interior nodes, diagonalized by Sturm-sequence bisection plus inverse iteration.
// Nothing here relies on node counting of continuous solutions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "sturm/error.hpp"
#include "sturm/grid.hpp"
#include "sturm/solver.hpp"
#include "sturm/tridiagonal.hpp"

namespace sturm {

/// Symmetric tridiagonal matrix: diag[i], off[i] = T(i, i+1) = T(i+1, i).
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }

    /// Number of eigenvalues strictly below `lambda` (negative pivots of T - lambda I = L D L^T).
    int count_below(double lambda) const {
        int count = 0;
        double q = 1.0;
        const double tiny = std::numeric_limits<double>::min();
        for (std::size_t i = 0; i < diag.size(); ++i) {
            const double e2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
            q = diag[i] - lambda - (i == 0 ? 0.0 : e2 / q);
            if (q == 0.0) q = -tiny;
            if (q < 0.0) ++count;
        }
        return count;
    }

    /// Gershgorin interval containing the spectrum.
    std::pair<double, double> bounds() const {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            double r = 0.0;
            if (i > 0) r += std::abs(off[i - 1]);
            if (i < off.size()) r += std::abs(off[i]);
            lo = std::min(lo, diag[i] - r);
            hi = std::max(hi, diag[i] + r);
        }
        return {lo, hi};
    }
};

/// -d^2/dx^2 + V on interior nodes: diagonal 2/dx^2 + V_i, off-diagonal -1/dx^2.
inline SymTridiagonal finite_difference_hamiltonian(const Grid& grid) {
    const std::size_t m = grid.size() - 2;
    const double inv_h2 = 1.0 / (grid.dx() * grid.dx());
    SymTridiagonal t;
    t.diag.resize(m);
    t.off.assign(m > 0 ? m - 1 : 0, -inv_h2);
    for (std::size_t r = 0; r < m; ++r) t.diag[r] = 2.0 * inv_h2 + grid.v()[r + 1];
    return t;
}

/// The j-th smallest eigenvalue (0-based) by bisection on the Sturm count.
inline double sturm_bisection(const SymTridiagonal& t, int j, int max_iterations = 200) {
    auto [lo, hi] = t.bounds();
    const double span = std::max(std::abs(lo), std::abs(hi));
    lo -= 1e-12 * span + 1e-300;
    hi += 1e-12 * span + 1e-300;
    for (int it = 0; it < max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
        if (t.count_below(mid) > j)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Lowest k eigenpairs of the finite-difference Hamiltonian, embedded with wall zeros.
inline std::vector<Eigenpair> matrix_oracle(const Grid& grid, int k) {
    const std::size_t m = grid.size() - 2;
    if (k < 1 || static_cast<std::size_t>(k) > m)
        throw InvalidParameter("matrix_oracle: k must be in [1, " + std::to_string(m) + "]");
    const SymTridiagonal t = finite_difference_hamiltonian(grid);
    const auto [glo, ghi] = t.bounds();
    const double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});

    constexpr int kInverseIterations = 6;  // at most 10
    std::vector<Eigenpair> out;
    std::vector<std::vector<double>> found;  // interior parts, unit 2-norm
    double prev_lambda = 0.0;
    for (int j = 0; j < k; ++j) {
        const double lambda = sturm_bisection(t, j);
        std::vector<double> sub(t.off), diag(t.diag), super(t.off);
        for (double& d : diag) d -= lambda;
        const TridiagonalLU lu(std::move(sub), std::move(diag), std::move(super));

        const bool close = j > 0 && std::abs(lambda - prev_lambda) < 1e-8 * scale;
        auto identity = [](std::span<const double> y, std::span<double> o) { std::copy(y.begin(), y.end(), o.begin()); };
        auto reorthogonalize = [&](std::span<double> y) {
            if (!close) return;
            for (const auto& q : found) {
                double dot = 0.0;
                for (std::size_t i = 0; i < m; ++i) dot += q[i] * y[i];
                for (std::size_t i = 0; i < m; ++i) y[i] -= dot * q[i];
            }
        };
        auto interior = inverse_iteration(lu, kInverseIterations, identity, reorthogonalize);

        double nrm = 0.0;
        for (double y : interior) nrm += y * y;
        nrm = std::sqrt(nrm);
        std::vector<double> unit(interior);
        for (double& y : unit) y /= nrm;
        found.push_back(std::move(unit));

        std::vector<double> psi(grid.size(), 0.0);
        std::copy(interior.begin(), interior.end(), psi.begin() + 1);
        out.push_back(Eigenpair{j + 1, lambda, normalize_and_fix_sign(psi, grid.dx()), grid, Method::matrix});
        prev_lambda = lambda;
    }
    return out;
}

}  // namespace sturm
