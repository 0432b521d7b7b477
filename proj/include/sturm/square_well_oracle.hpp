#pragma once

// Bound states of the finite square well V = -V0 on |x| < b (zero outside) on the whole line,
// from the even/odd matching conditions with k = sqrt(V0 - kappa^2), E = -kappa^2:
//   even:  k tan(k b) = kappa
//   odd:  -k cot(k b) = kappa
// Each branch of tan/cot holds at most one root, found by bisection in k.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sturm/error.hpp"

namespace sturm {

struct SquareWellLevel {
    int n = 0;
    bool even = true;
    double kappa = 0.0;
    double energy = 0.0;
};

namespace detail {

template <class F>
double bisect_root(F f, double lo, double hi, double tol) {
    double flo = f(lo);
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

inline std::vector<SquareWellLevel> square_well_bound_states(double depth, double half_width, double tol = 1e-14) {
    if (!(depth > 0.0) || !(half_width > 0.0)) throw InvalidParameter("square well oracle: need V0 > 0 and b > 0");
    const double kmax = std::sqrt(depth);
    const double pi = std::numbers::pi;
    std::vector<SquareWellLevel> out;
    // Level j (0-based) lives on k b in (j pi/2, (j+1) pi/2): even for j even, odd for j odd.
    for (int j = 0;; ++j) {
        const double klo = j * pi / 2.0 / half_width;
        if (klo >= kmax) break;
        const double khi = std::min((j + 1) * pi / 2.0 / half_width, kmax);
        const bool even = j % 2 == 0;
        // k tan(kb) = kappa and -k cot(kb) = kappa, multiplied through by cos(kb) resp. sin(kb),
        // which do not vanish inside the branch; this removes the poles.
        auto g = [&](double k) {
            const double kappa = std::sqrt(std::max(0.0, depth - k * k));
            const double kb = k * half_width;
            return even ? k * std::sin(kb) - kappa * std::cos(kb) : -k * std::cos(kb) - kappa * std::sin(kb);
        };
        const double a = klo + 1e-15 * (1.0 + klo);
        const double b = khi;
        if ((g(a) < 0.0) == (g(b) < 0.0)) continue;
        const double k = detail::bisect_root(g, a, b, tol);
        const double kappa = std::sqrt(std::max(0.0, depth - k * k));
        if (!(kappa > 0.0)) continue;
        out.push_back({static_cast<int>(out.size()) + 1, even, kappa, -kappa * kappa});
    }
    return out;
}

}  // namespace sturm
