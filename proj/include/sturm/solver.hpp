#pragma once

// Bound states of -psi'' + V psi = E psi on [-a, a] with psi(+-a) = 0.
//
// Energies come from single-direction Numerov shooting: the number of sign changes of the
// shooting solution on (-a, a] counts the eigenvalues below the trial energy, so bisection on
// that count isolates the n-th level. The wavefunction at the converged energy is then taken
// as the null vector of the same Numerov discretization (inverse iteration on the tridiagonal
// pencil), which keeps exponentially small tails accurate where forward marching cannot.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sturm/error.hpp"
#include "sturm/grid.hpp"
#include "sturm/tridiagonal.hpp"

namespace sturm {

enum class Method { numerov, matrix, analytic };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::numerov: return "numerov";
        case Method::matrix: return "matrix";
        case Method::analytic: return "analytic";
    }
    return "unknown";
}

/// The n-th bound state (n = 1 is the ground state) sampled on `grid`.
/// psi is trapezoid-normalized, zero at both walls, and positive at the first nonzero sample.
struct Eigenpair {
    int n = 0;
    double energy = 0.0;
    std::vector<double> psi;
    Grid grid;
    Method method = Method::numerov;
};

inline constexpr std::size_t kMinShootingPoints = 51;

struct SolveOptions {
    int max_window_doublings = 60;
    double bisection_tol = 1e-12;
    int max_bisection_iterations = 200;
    double initial_window = 1.0;
    int inverse_iterations = 6;
};

/// Output of a raw Numerov march. The true solution is psi * exp(log_scale).
struct ShootingSolution {
    std::vector<double> psi;
    double log_scale = 0.0;
};

namespace detail {

inline constexpr double kRescaleThreshold = 1e100;

/// How an overflowing march is brought back into range.
///  whole:   every stored sample is divided, so psi * exp(log_scale) stays one function; samples
///           far behind the running front can underflow to zero.
///  running: only the running samples are divided; stored samples keep their own scale. Signs,
///           and hence node counts and zero positions, survive any amount of growth.
enum class Rescale { whole, running };

/// Marches psi'' = (V - E) psi away from `start` (step = +1 or -1), given the values at
/// `start` and `start + step`. Entries on the far side of `start` are left untouched.
inline void numerov_march(std::span<const double> v, double dx, double energy, std::size_t start, int step,
                          double psi_start, double psi_next, std::span<double> psi, double& log_scale,
                          Rescale mode = Rescale::whole) {
    const std::size_t n = v.size();
    const double h2 = dx * dx / 12.0;
    psi[start] = psi_start;
    if (step > 0 ? start + 1 >= n : start == 0) return;
    std::size_t prev = start;
    std::size_t cur = step > 0 ? start + 1 : start - 1;
    psi[cur] = psi_next;
    while (step > 0 ? cur + 1 < n : cur > 0) {
        const std::size_t next = step > 0 ? cur + 1 : cur - 1;
        const double c_prev = 1.0 - h2 * (v[prev] - energy);
        const double c_cur = 1.0 + 5.0 * h2 * (v[cur] - energy);
        const double c_next = 1.0 - h2 * (v[next] - energy);
        psi[next] = (2.0 * c_cur * psi[cur] - c_prev * psi[prev]) / c_next;
        if (std::abs(psi[next]) > kRescaleThreshold) {
            if (mode == Rescale::whole) {
                for (double& p : psi) p /= kRescaleThreshold;
            } else {
                psi[cur] /= kRescaleThreshold;
                psi[next] /= kRescaleThreshold;
            }
            log_scale += std::log(kRescaleThreshold);
        }
        prev = cur;
        cur = next;
    }
}

/// Strict sign changes between consecutive nonzero samples.
inline int sign_changes(std::span<const double> f) {
    int count = 0;
    int last = 0;
    for (double val : f) {
        const int s = (val > 0.0) - (val < 0.0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace detail

/// Left-to-right Numerov solution with psi[0] = 0 and psi[1] = dx; no normalization.
inline ShootingSolution numerov_integrate(const Grid& grid, double energy) {
    ShootingSolution out;
    out.psi.assign(grid.size(), 0.0);
    detail::numerov_march(grid.v(), grid.dx(), energy, 0, +1, 0.0, grid.dx(), out.psi, out.log_scale);
    return out;
}

/// Interior sign changes; the first and last samples (the walls) are never nodes.
inline int count_sign_changes(std::span<const double> psi) {
    if (psi.size() < 3) return 0;
    return detail::sign_changes(psi.subspan(1, psi.size() - 2));
}

/// Scales psi to unit trapezoid norm and flips it so the first nonzero sample after the left
/// wall is positive.
inline std::vector<double> normalize_and_fix_sign(std::span<const double> psi, double dx) {
    std::vector<double> out(psi.begin(), psi.end());
    const double norm2 = trapezoid_product(out, out, dx);
    if (!(norm2 > 0.0)) throw DegenerateInput("normalize: wavefunction is identically zero");
    double scale = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i] != 0.0) {
            if (out[i] < 0.0) scale = -scale;
            break;
        }
    }
    for (double& p : out) p *= scale;
    return out;
}

namespace detail {

/// Replaces the classically forbidden stretches next to the walls by a march from the wall inward,
/// matched to `psi` at the outermost allowed node. Inverse iteration resolves psi only to about
/// eps * max|psi|, and deep tails sit far below that; marching from the wall is the growing
/// direction there and keeps every sample accurate relative to its own size.
inline void rebuild_forbidden_tails(const Grid& grid, double energy, std::vector<double>& psi) {
    const auto v = grid.v();
    const std::size_t n = grid.size();
    std::size_t first = n, last = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] <= energy) {
            first = std::min(first, i);
            last = i;
        }
    }
    if (first >= n) return;
    double log_scale = 0.0;
    if (first > 1 && psi[first] != 0.0) {
        std::vector<double> tail(first + 1, 0.0);
        numerov_march(v.first(first + 1), grid.dx(), energy, 0, +1, 0.0, grid.dx(), tail, log_scale);
        const double k = psi[first] / tail[first];
        for (std::size_t i = 0; i < first; ++i) psi[i] = k * tail[i];
    }
    if (last + 2 < n && psi[last] != 0.0) {
        const std::size_t len = n - last;
        std::vector<double> tail(len, 0.0);
        numerov_march(v.subspan(last), grid.dx(), energy, len - 1, -1, 0.0, grid.dx(), tail, log_scale);
        const double k = psi[last] / tail[0];
        for (std::size_t i = 1; i < len; ++i) psi[last + i] = k * tail[i];
    }
}

}  // namespace detail

/// Null vector of the Numerov discretization at `energy`, with wall zeros, normalized.
inline std::vector<double> numerov_eigenvector(const Grid& grid, double energy, int iterations) {
    const std::size_t m = grid.size() - 2;
    const auto v = grid.v();
    const double inv_h2 = 1.0 / (grid.dx() * grid.dx());
    std::vector<double> sub(m > 0 ? m - 1 : 0), diag(m), super(m > 0 ? m - 1 : 0);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t i = r + 1;
        diag[r] = 2.0 * inv_h2 + 10.0 * (v[i] - energy) / 12.0;
        if (r + 1 < m) {
            super[r] = -inv_h2 + (v[i + 1] - energy) / 12.0;
            sub[r] = -inv_h2 + (v[i] - energy) / 12.0;
        }
    }
    const TridiagonalLU lu(std::move(sub), std::move(diag), std::move(super));
    auto apply_b = [m](std::span<const double> y, std::span<double> out) {
        for (std::size_t r = 0; r < m; ++r) {
            double s = 10.0 * y[r];
            if (r > 0) s += y[r - 1];
            if (r + 1 < m) s += y[r + 1];
            out[r] = s / 12.0;
        }
    };
    const auto interior = inverse_iteration(lu, iterations, apply_b);
    std::vector<double> psi(grid.size(), 0.0);
    std::copy(interior.begin(), interior.end(), psi.begin() + 1);
    detail::rebuild_forbidden_tails(grid, energy, psi);
    return normalize_and_fix_sign(psi, grid.dx());
}

namespace detail {

inline Eigenpair solve_state_from(const Grid& grid, int n, const SolveOptions& opt, double lower_hint,
                                  bool use_hint) {
    if (n < 1) throw InvalidParameter("solve_state: n must be >= 1");
    if (grid.size() < kMinShootingPoints)
        throw InvalidParameter("solve_state: grid needs at least " + std::to_string(kMinShootingPoints) + " points");

    std::vector<double> work(grid.size());
    const auto v = grid.v();
    const double dx = grid.dx();
    // Sign changes on (-a, a]: the number of eigenvalues strictly below `energy`.
    auto levels_below = [&](double energy) {
        double log_scale = 0.0;
        numerov_march(v, dx, energy, 0, +1, 0.0, dx, work, log_scale, Rescale::running);
        return sign_changes(std::span<const double>(work).subspan(1));
    };

    const double vmin = grid.v_min();
    double lo = vmin - 1.0;
    double base = vmin;
    if (use_hint && lower_hint > lo && levels_below(lower_hint) <= n - 1) {
        lo = lower_hint;
        base = lower_hint;
    }
    const double window_lo = lo;
    double width = opt.initial_window;
    double hi = base + width;
    int doublings = 0;
    for (;;) {
        const int c = levels_below(hi);
        if (c >= n) break;
        lo = hi;
        if (doublings++ >= opt.max_window_doublings) {
            throw BracketNotFound("solve_state: no energy bracket for state n=" + std::to_string(n) + " in [" +
                                      std::to_string(window_lo) + ", " + std::to_string(hi) + "]",
                                  window_lo, hi);
        }
        width *= 2.0;
        hi = base + width;
    }

    int it = 0;
    for (; it < opt.max_bisection_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < opt.bisection_tol * std::max(1.0, std::abs(mid))) break;
        if (mid <= lo || mid >= hi) break;  // bracket is down to adjacent doubles
        if (levels_below(mid) >= n)
            hi = mid;
        else
            lo = mid;
    }
    if (it == opt.max_bisection_iterations)
        throw NonConvergence("solve_state: bisection for state n=" + std::to_string(n) + " did not converge", it);

    Eigenpair pair{n, 0.5 * (lo + hi), {}, grid, Method::numerov};
    pair.psi = numerov_eigenvector(grid, pair.energy, opt.inverse_iterations);
    return pair;
}

}  // namespace detail

inline Eigenpair solve_state(const Grid& grid, int n, const SolveOptions& options = {}) {
    return detail::solve_state_from(grid, n, options, 0.0, false);
}

/// States 1..k; each search starts from the previous level, which lies below the next one.
inline std::vector<Eigenpair> solve_lowest(const Grid& grid, int k, const SolveOptions& options = {}) {
    if (k < 1) throw InvalidParameter("solve_lowest: k must be >= 1");
    std::vector<Eigenpair> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int n = 1; n <= k; ++n) {
        const bool seeded = !out.empty();
        out.push_back(detail::solve_state_from(grid, n, options, seeded ? out.back().energy : 0.0, seeded));
    }
    return out;
}

}  // namespace sturm
