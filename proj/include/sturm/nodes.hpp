#pragma once

// Zeros of eigenfunctions and the checks built on them: node count n - 1, interlacing of the
// zeros of different levels, alternation of zeros of two independent solutions at one energy,
// and detection of points where psi and psi' vanish together.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sturm/error.hpp"
#include "sturm/grid.hpp"
#include "sturm/solver.hpp"

namespace sturm {

struct NodeSet {
    int eigen_index = 0;
    std::vector<double> positions;
    int count = 0;
    double refinement_tol = 0.0;
};

namespace detail {

/// Sign changes of f between consecutive nonzero samples, each placed by linear interpolation.
inline std::vector<double> interpolated_zeros(const Grid& grid, std::span<const double> f, std::size_t first,
                                              std::size_t last) {
    std::vector<double> zeros;
    std::optional<std::size_t> prev;
    for (std::size_t i = first; i <= last && i < f.size(); ++i) {
        if (f[i] == 0.0) continue;
        if (prev && (f[i] > 0.0) != (f[*prev] > 0.0)) {
            const double x0 = grid.x(*prev), x1 = grid.x(i);
            zeros.push_back(x0 + (x1 - x0) * f[*prev] / (f[*prev] - f[i]));
        }
        prev = i;
    }
    return zeros;
}

inline void require_same_grid(const Eigenpair& p1, const Eigenpair& p2, const char* who) {
    if (!(p1.grid == p2.grid)) throw GridMismatch(std::string(who) + ": eigenpairs live on different grids");
}

}  // namespace detail

/// Interior nodes of psi: strict sign changes only, boundary zeros excluded. Two crossings closer
/// than 2 dx are sampling jitter around a single touch and cancel each other.
inline NodeSet find_nodes(const Eigenpair& pair) {
    const Grid& g = pair.grid;
    NodeSet out;
    out.eigen_index = pair.n;
    out.refinement_tol = g.dx();
    if (pair.psi.size() < 3) return out;
    const auto raw = detail::interpolated_zeros(g, pair.psi, 1, pair.psi.size() - 2);
    for (double x : raw) {
        if (!out.positions.empty() && x - out.positions.back() <= 2.0 * g.dx())
            out.positions.pop_back();
        else
            out.positions.push_back(x);
    }
    out.count = static_cast<int>(out.positions.size());
    return out;
}

struct NodeCountReport {
    bool passed = false;
    int expected = 0;
    int found = 0;
};

inline NodeCountReport verify_node_count(const Eigenpair& pair) {
    const int found = find_nodes(pair).count;
    return {found == pair.n - 1, pair.n - 1, found};
}

struct InterlacingReport {
    int n1 = 0;
    int n2 = 0;
    std::vector<std::pair<double, double>> intervals_checked;
    std::vector<std::optional<double>> witnesses;  // one slot per interval
    bool passed = false;
};

/// Between consecutive zeros of the lower state (walls included) there must be a node of the higher one.
inline InterlacingReport verify_interlacing(const Eigenpair& p1, const Eigenpair& p2) {
    if (p1.n >= p2.n)
        throw PreconditionError("verify_interlacing: need n1 < n2 (got " + std::to_string(p1.n) + ", " +
                                std::to_string(p2.n) + ")");
    detail::require_same_grid(p1, p2, "verify_interlacing");
    const double a = p1.grid.a();
    std::vector<double> zeros{-a};
    for (double x : find_nodes(p1).positions) zeros.push_back(x);
    zeros.push_back(a);
    const auto higher = find_nodes(p2).positions;

    InterlacingReport rep{p1.n, p2.n, {}, {}, true};
    for (std::size_t i = 0; i + 1 < zeros.size(); ++i) {
        const double lo = zeros[i], hi = zeros[i + 1];
        rep.intervals_checked.emplace_back(lo, hi);
        auto it = std::upper_bound(higher.begin(), higher.end(), lo);
        if (it != higher.end() && *it < hi) {
            rep.witnesses.emplace_back(*it);
        } else {
            rep.witnesses.emplace_back(std::nullopt);
            rep.passed = false;
        }
    }
    return rep;
}

enum class SeparationVerdict { alternating, not_alternating, vacuous };

inline const char* to_string(SeparationVerdict v) {
    switch (v) {
        case SeparationVerdict::alternating: return "alternating";
        case SeparationVerdict::not_alternating: return "not_alternating";
        case SeparationVerdict::vacuous: return "vacuous";
    }
    return "unknown";
}

struct SeparationReport {
    SeparationVerdict verdict = SeparationVerdict::vacuous;
    double energy = 0.0;
    double anchor = 0.0;  // where the initial data u = 0, u' = 1 and w = 1, w' = 0 are imposed
    std::vector<double> u_zeros;
    std::vector<double> w_zeros;

    bool ok() const { return verdict != SeparationVerdict::not_alternating; }
};

namespace detail {

/// Every gap between consecutive zeros of `outer` holds exactly one zero of `inner`.
inline bool one_between_each(const std::vector<double>& outer, const std::vector<double>& inner) {
    for (std::size_t i = 0; i + 1 < outer.size(); ++i) {
        const auto lo = std::upper_bound(inner.begin(), inner.end(), outer[i]);
        const auto hi = std::lower_bound(inner.begin(), inner.end(), outer[i + 1]);
        if (hi - lo != 1) return false;
    }
    return true;
}

}  // namespace detail

/// Zeros of two independent solutions at the same energy must alternate.
///
/// The initial data are imposed at the left wall when the wall is classically allowed (E >= V),
/// otherwise at the leftmost allowed node, and the solutions are marched outward from there.
/// Marching across a long forbidden stretch first would make u and w numerically parallel.
inline SeparationReport verify_separation(const Grid& grid, double energy) {
    const auto v = grid.v();
    const std::size_t n = grid.size();
    const double dx = grid.dx();
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] <= energy) {
            s = i;
            break;
        }
    }
    if (s + 1 >= n) s = 0;

    const double h2 = dx * dx / 12.0;
    auto c = [&](std::size_t i) { return 1.0 - h2 * (v[i] - energy); };
    const double d_s = 1.0 + 5.0 * h2 * (v[s] - energy);

    std::vector<double> u(n, 0.0), w(n, 0.0);
    double log_u = 0.0, log_w = 0.0;
    // Only signs matter for the zeros, so samples keep whatever scale they were written at.
    constexpr auto mode = detail::Rescale::running;
    detail::numerov_march(v, dx, energy, s, +1, 0.0, dx, u, log_u, mode);
    detail::numerov_march(v, dx, energy, s, +1, 1.0, d_s / c(s + 1), w, log_w, mode);
    if (s > 0) {
        std::vector<double> ul(n, 0.0), wl(n, 0.0);
        detail::numerov_march(v, dx, energy, s, -1, 0.0, -dx, ul, log_u, mode);
        detail::numerov_march(v, dx, energy, s, -1, 1.0, d_s / c(s - 1), wl, log_w, mode);
        std::copy(ul.begin(), ul.begin() + static_cast<std::ptrdiff_t>(s), u.begin());
        std::copy(wl.begin(), wl.begin() + static_cast<std::ptrdiff_t>(s), w.begin());
    }

    SeparationReport rep;
    rep.energy = energy;
    rep.anchor = grid.x(s);
    rep.u_zeros = detail::interpolated_zeros(grid, u, 0, n - 1);
    if (s == 0) rep.u_zeros.insert(rep.u_zeros.begin(), grid.x(0));  // u vanishes at its anchor
    rep.w_zeros = detail::interpolated_zeros(grid, w, 0, n - 1);
    if (rep.u_zeros.size() < 2 || rep.w_zeros.size() < 2) {
        rep.verdict = SeparationVerdict::vacuous;
    } else {
        const bool ok = detail::one_between_each(rep.u_zeros, rep.w_zeros) &&
                        detail::one_between_each(rep.w_zeros, rep.u_zeros);
        rep.verdict = ok ? SeparationVerdict::alternating : SeparationVerdict::not_alternating;
    }
    return rep;
}

/// Central differences inside, second-order one-sided differences at the two ends.
inline std::vector<double> derivative(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    return d;
}

/// Interior points where psi and psi' are both negligible, i.e. psi touches zero tangentially.
///
/// Candidates are local minima of |psi|: a touch is one, whereas the monotone, exponentially small
/// tails of a bound state in a forbidden region are not and would otherwise satisfy both bounds.
/// A genuine eigenfunction has no such point, since psi = psi' = 0 forces psi to vanish identically.
inline std::vector<double> detect_critical_touch(const Eigenpair& pair, double tol = 1e-5) {
    const auto& psi = pair.psi;
    const std::size_t n = psi.size();
    std::vector<double> flagged;
    if (n < 3) return flagged;
    const auto dpsi = derivative(psi, pair.grid.dx());
    double max_psi = 0.0, max_dpsi = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        max_psi = std::max(max_psi, std::abs(psi[i]));
        max_dpsi = std::max(max_dpsi, std::abs(dpsi[i]));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double m = std::abs(psi[i]);
        const bool local_min = m <= std::abs(psi[i - 1]) && m <= std::abs(psi[i + 1]);
        if (local_min && m <= tol * max_psi && std::abs(dpsi[i]) <= tol * max_dpsi) flagged.push_back(pair.grid.x(i));
    }
    return flagged;
}

}  // namespace sturm
