#pragma once

// General tridiagonal LU with partial pivoting (the dgttrf/dgtts2 scheme), plus the
// inverse-iteration driver shared by both eigensolvers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace sturm {

class TridiagonalLU {
public:
    /// sub[i] = A(i+1, i), diag[i] = A(i, i), super[i] = A(i, i+1).
    TridiagonalLU(std::vector<double> sub, std::vector<double> diag, std::vector<double> super)
        : dl_(std::move(sub)), d_(std::move(diag)), du_(std::move(super)) {
        factor();
    }

    std::size_t size() const { return d_.size(); }

    /// Solves A x = b in place.
    void solve(std::span<double> b) const {
        const std::size_t n = d_.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped_[i]) {
                b[i + 1] -= dl_[i] * b[i];
            } else {
                const double t = b[i];
                b[i] = b[i + 1];
                b[i + 1] = t - dl_[i] * b[i];
            }
        }
        b[n - 1] /= d_[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
        if (n < 3) return;
        for (std::size_t k = n - 2; k-- > 0;) {
            b[k] = (b[k] - du_[k] * b[k + 1] - du2_[k] * b[k + 2]) / d_[k];
        }
    }

private:
    void factor() {
        const std::size_t n = d_.size();
        du2_.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped_.assign(n > 1 ? n - 1 : 0, false);
        double scale = 0.0;
        for (double v : d_) scale = std::max(scale, std::abs(v));
        for (double v : dl_) scale = std::max(scale, std::abs(v));
        for (double v : du_) scale = std::max(scale, std::abs(v));

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (d_[i] != 0.0) {
                    const double fact = dl_[i] / d_[i];
                    dl_[i] = fact;
                    d_[i + 1] -= fact * du_[i];
                } else {
                    dl_[i] = 0.0;
                }
            } else {
                const double fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                const double t = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = t - fact * d_[i + 1];
                if (i + 2 < n) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
                swapped_[i] = true;
            }
        }
        // An exactly singular shift (inverse iteration at a converged eigenvalue) leaves a zero pivot.
        const double tiny = std::numeric_limits<double>::epsilon() * (scale > 0.0 ? scale : 1.0);
        for (double& p : d_) {
            if (std::abs(p) < tiny) p = std::signbit(p) ? -tiny : tiny;
        }
    }

    std::vector<double> dl_, d_, du_, du2_;
    std::vector<bool> swapped_;
};

namespace detail {

inline std::vector<double> inverse_iteration_start(std::size_t n) {
    std::mt19937 rng(20240917u);
    std::vector<double> v(n);
    for (auto& x : v) x = 0.5 + static_cast<double>(rng()) / 4294967296.0;
    return v;
}

inline void scale_to_unit_max(std::span<double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (m > 0.0)
        for (double& x : v) x /= m;
}

}  // namespace detail

/// Runs `iterations` steps of y <- A^{-1} (B y) starting from a fixed pseudo-random vector.
/// `apply_rhs` maps the current iterate to B y; `orthogonalize` (optional) runs after every solve.
inline std::vector<double> inverse_iteration(const TridiagonalLU& lu, int iterations,
                                             const std::function<void(std::span<const double>, std::span<double>)>& apply_rhs,
                                             const std::function<void(std::span<double>)>& orthogonalize = {}) {
    const std::size_t n = lu.size();
    std::vector<double> y = detail::inverse_iteration_start(n);
    std::vector<double> rhs(n);
    for (int it = 0; it < iterations; ++it) {
        apply_rhs(y, rhs);
        lu.solve(rhs);
        y.swap(rhs);
        if (orthogonalize) orthogonalize(y);
        detail::scale_to_unit_max(y);
    }
    return y;
}

}  // namespace sturm
