#pragma once

// The wall-separation family V_a: start from a narrow infinite well, push the walls out, and
// follow every level E_n(a) together with its node count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "sturm/error.hpp"
#include "sturm/grid.hpp"
#include "sturm/nodes.hpp"
#include "sturm/potential.hpp"
#include "sturm/solver.hpp"

namespace sturm {

/// Exact infinite-well level on [-eps, eps]: cos((2k+1) pi x / 2 eps) for odd n,
/// sin(k pi x / eps) for even n, E_n = n^2 pi^2 / (4 eps^2).
inline Eigenpair analytic_small_a(int n, double eps, std::size_t n_points = 4001) {
    if (n < 1) throw InvalidParameter("analytic_small_a: n must be >= 1");
    if (!(eps > 0.0)) throw InvalidParameter("analytic_small_a: eps must be > 0");
    const double pi = std::numbers::pi;
    Grid grid = build_grid(wall(ZeroPotential{}, eps), n_points);
    std::vector<double> psi(grid.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double x = grid.x(i);
        if (n % 2 == 1) {
            const int k = (n - 1) / 2;
            psi[i] = std::cos((2 * k + 1) * pi * x / (2.0 * eps));
        } else {
            const int k = n / 2;
            psi[i] = std::sin(k * pi * x / eps);
        }
    }
    psi.front() = 0.0;
    psi.back() = 0.0;
    const double energy = n * n * pi * pi / (4.0 * eps * eps);
    auto normalized = normalize_and_fix_sign(psi, grid.dx());
    return Eigenpair{n, energy, std::move(normalized), std::move(grid), Method::analytic};
}

enum class Classification { bound, escaping, undetermined };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::bound: return "bound";
        case Classification::escaping: return "escaping";
        case Classification::undetermined: return "undetermined";
    }
    return "unknown";
}

struct BranchSample {
    double a = 0.0;
    double energy = 0.0;
    int node_count = 0;
};

struct Branch {
    int n = 0;
    std::vector<BranchSample> samples;
    Classification classification = Classification::undetermined;
    std::optional<std::string> diagnostic;  // set when a solve failed and the branch was cut short
};

/// bound: settled below threshold - margin (last three energies within margin of each other);
/// escaping: at or above threshold - margin and still falling. A confining potential (infinite
/// threshold) has only bound levels.
inline Classification classify_branch(const Branch& branch, double threshold, double margin) {
    if (std::isinf(threshold) && threshold > 0.0) return Classification::bound;
    const auto& s = branch.samples;
    if (s.empty()) return Classification::undetermined;
    const double e = s.back().energy;
    if (e < threshold - margin && s.size() >= 3) {
        const auto last3 = {s[s.size() - 1].energy, s[s.size() - 2].energy, s[s.size() - 3].energy};
        if (std::max(last3) - std::min(last3) <= margin) return Classification::bound;
    }
    if (e >= threshold - margin && s.size() >= 2 && e < s[s.size() - 2].energy) return Classification::escaping;
    return Classification::undetermined;
}

struct SweepConfig {
    std::vector<double> a_schedule;
    int n_max = 3;
    std::size_t n_points = 4001;
    /// When set, every grid uses this spacing (a snapped to a multiple of it) instead of n_points.
    std::optional<double> spacing;
    std::optional<double> classification_margin;
    unsigned workers = 1;
    SolveOptions solve;
};

inline std::vector<double> geometric_schedule(double a_min, double a_max, int count) {
    if (!(a_min > 0.0) || !(a_max > a_min)) throw InvalidParameter("schedule: need 0 < a_min < a_max");
    if (count < 2) throw InvalidParameter("schedule: need at least two points");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double ratio = std::log(a_max / a_min) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = a_min * std::exp(ratio * i);
    out.front() = a_min;
    out.back() = a_max;
    return out;
}

/// 1e-3 * max(1, |V0|): walled levels approach the threshold only like a^-2.
inline double default_margin(const PotentialSpec& spec) { return 1e-3 * std::max(1.0, depth_scale(spec)); }

namespace detail {

inline Grid sweep_grid(const PotentialSpec& spec, const SweepConfig& cfg, double a) {
    if (cfg.spacing) {
        const auto m = static_cast<std::size_t>(std::llround(a / *cfg.spacing));
        return build_grid_with_spacing(spec, *cfg.spacing, m);
    }
    return build_grid(wall(spec, a), cfg.n_points);
}

struct SolveOutcome {
    std::vector<std::variant<BranchSample, std::string>> levels;  // index n - 1
};

inline SolveOutcome solve_at(const PotentialSpec& spec, const SweepConfig& cfg, double a) {
    SolveOutcome out;
    const Grid grid = sweep_grid(spec, cfg, a);
    std::optional<double> prev;
    for (int n = 1; n <= cfg.n_max; ++n) {
        try {
            auto pair = solve_state_from(grid, n, cfg.solve, prev.value_or(0.0), prev.has_value());
            prev = pair.energy;
            out.levels.emplace_back(BranchSample{grid.a(), pair.energy, find_nodes(pair).count});
        } catch (const Error& e) {
            prev.reset();
            out.levels.emplace_back(std::string(e.what()));
        }
    }
    return out;
}

}  // namespace detail

inline void validate(const SweepConfig& cfg) {
    if (cfg.a_schedule.size() < 2) throw InvalidParameter("sweep: schedule needs at least two half widths");
    if (cfg.n_max < 1) throw InvalidParameter("sweep: n_max must be >= 1");
    double prev = 0.0;
    for (double a : cfg.a_schedule) {
        double eff = a;
        if (cfg.spacing) {
            if (!(*cfg.spacing > 0.0)) throw InvalidParameter("sweep: spacing must be > 0");
            eff = static_cast<double>(std::llround(a / *cfg.spacing)) * *cfg.spacing;
            if (2 * std::llround(a / *cfg.spacing) + 1 < static_cast<long long>(kMinShootingPoints))
                throw InvalidParameter("sweep: spacing too coarse for a = " + std::to_string(a));
        }
        if (!(eff > prev)) throw InvalidParameter("sweep: schedule must be positive and strictly increasing");
        prev = eff;
    }
    if (!cfg.spacing && (cfg.n_points < kMinShootingPoints || cfg.n_points % 2 == 0))
        throw InvalidParameter("sweep: n_points must be odd and >= " + std::to_string(kMinShootingPoints));
}

/// Follows each level n = 1..n_max across the schedule. Every (a, n) solve is independent, so
/// the result does not depend on the worker count.
inline std::vector<Branch> sweep(const PotentialSpec& spec, const SweepConfig& cfg) {
    validate(cfg);
    const std::size_t count = cfg.a_schedule.size();
    std::vector<detail::SolveOutcome> outcomes(count);
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(count)));
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t j = next++; j < count; j = next++) outcomes[j] = detail::solve_at(spec, cfg, cfg.a_schedule[j]);
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    }

    std::vector<Branch> branches;
    for (int n = 1; n <= cfg.n_max; ++n) {
        Branch b;
        b.n = n;
        for (std::size_t j = 0; j < count; ++j) {
            const auto& level = outcomes[j].levels[static_cast<std::size_t>(n - 1)];
            if (const auto* err = std::get_if<std::string>(&level)) {
                b.diagnostic = "solve failed at a=" + std::to_string(cfg.a_schedule[j]) + ": " + *err;
                break;
            }
            b.samples.push_back(std::get<BranchSample>(level));
        }
        branches.push_back(std::move(b));
    }
    const double threshold = continuum_threshold(spec);
    const double margin = cfg.classification_margin.value_or(default_margin(spec));
    for (auto& b : branches) b.classification = classify_branch(b, threshold, margin);
    return branches;
}

struct BranchViolation {
    std::size_t sample = 0;  // 0-based position in Branch::samples
    std::string what;
};

struct BranchReport {
    bool passed = true;
    std::vector<BranchViolation> violations;
};

/// Node count pinned at n - 1 along the whole branch; E non-increasing in a (walls only ever
/// move outward, so the levels can only drop).
inline BranchReport verify_branch(const Branch& branch, double monotonicity_tol = 1e-10) {
    if (branch.samples.size() < 2) throw PreconditionError("verify_branch: need at least two samples");
    BranchReport rep;
    for (std::size_t i = 0; i < branch.samples.size(); ++i) {
        const auto& s = branch.samples[i];
        if (s.node_count != branch.n - 1) {
            rep.violations.push_back({i, "node count " + std::to_string(s.node_count) + " != " +
                                             std::to_string(branch.n - 1) + " at a=" + std::to_string(s.a)});
        }
        if (i > 0 && s.energy > branch.samples[i - 1].energy + monotonicity_tol) {
            rep.violations.push_back({i, "energy rose by " + std::to_string(s.energy - branch.samples[i - 1].energy) +
                                             " at a=" + std::to_string(s.a)});
        }
    }
    rep.passed = rep.violations.empty();
    return rep;
}

}  // namespace sturm
