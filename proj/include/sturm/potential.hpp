#pragma once

// Base potentials V(x) and the walled family V_a(x) used by the solvers.
// Units throughout: hbar^2 / 2m = 1, so energies carry units of 1/length^2.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sturm/error.hpp"

namespace sturm {

struct ZeroPotential {};

/// V(x) = k x^2
struct Harmonic {
    explicit Harmonic(double stiffness) : k(stiffness) {
        if (!(k > 0.0) || !std::isfinite(k)) throw InvalidParameter("harmonic: stiffness must be > 0");
    }
    double k;
};

/// V(x) = -depth for |x| < half_width, 0 otherwise.
struct SquareWell {
    SquareWell(double v0, double b) : depth(v0), half_width(b) {
        if (!(depth > 0.0) || !std::isfinite(depth)) throw InvalidParameter("square_well: depth V0 must be > 0");
        if (!(half_width > 0.0) || !std::isfinite(half_width))
            throw InvalidParameter("square_well: half width b must be > 0");
    }
    double depth;
    double half_width;
};

/// V(x) = c4 x^4 - c2 x^2
struct DoubleWell {
    DoubleWell(double quartic, double quadratic) : c4(quartic), c2(quadratic) {
        if (!(c4 > 0.0) || !std::isfinite(c4)) throw InvalidParameter("double_well: c4 must be > 0");
        if (!(c2 > 0.0) || !std::isfinite(c2)) throw InvalidParameter("double_well: c2 must be > 0");
    }
    double c4;
    double c2;
};

/// Linear interpolation through (x, V) knots, clamped to the end values outside the data range.
class PiecewiseLinear {
public:
    explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
        if (knots_.size() < 2) throw InvalidParameter("piecewise_linear: need at least two points");
        for (std::size_t i = 0; i < knots_.size(); ++i) {
            if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second))
                throw InvalidParameter("piecewise_linear: non-finite point");
            if (i > 0 && !(knots_[i].first > knots_[i - 1].first))
                throw InvalidParameter("piecewise_linear: x must be strictly increasing");
        }
    }

    double operator()(double x) const {
        if (x <= knots_.front().first) return knots_.front().second;
        if (x >= knots_.back().first) return knots_.back().second;
        auto hi = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, const auto& p) { return v < p.first; });
        auto lo = hi - 1;
        const double t = (x - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    }

    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

private:
    std::vector<std::pair<double, double>> knots_;
};

using PotentialSpec = std::variant<ZeroPotential, Harmonic, SquareWell, DoubleWell, PiecewiseLinear>;

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

inline double evaluate(const PotentialSpec& spec, double x) {
    return std::visit(overloaded{
                          [](const ZeroPotential&) { return 0.0; },
                          [x](const Harmonic& p) { return p.k * x * x; },
                          [x](const SquareWell& p) { return std::abs(x) < p.half_width ? -p.depth : 0.0; },
                          [x](const DoubleWell& p) {
                              const double x2 = x * x;
                              return p.c4 * x2 * x2 - p.c2 * x2;
                          },
                          [x](const PiecewiseLinear& p) { return p(x); },
                      },
                      spec);
}

/// liminf of V(x) as |x| -> infinity; +infinity when the potential confines.
inline double continuum_threshold(const PotentialSpec& spec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(overloaded{
                          [](const ZeroPotential&) { return 0.0; },
                          [inf](const Harmonic&) { return inf; },
                          [](const SquareWell&) { return 0.0; },
                          [inf](const DoubleWell&) { return inf; },
                          [](const PiecewiseLinear& p) {
                              return std::min(p.knots().front().second, p.knots().back().second);
                          },
                      },
                      spec);
}

/// Characteristic energy scale of the potential's attractive part (|V0| for the square well).
inline double depth_scale(const PotentialSpec& spec) {
    return std::visit(overloaded{
                          [](const ZeroPotential&) { return 0.0; },
                          [](const Harmonic&) { return 0.0; },
                          [](const SquareWell& p) { return p.depth; },
                          [](const DoubleWell& p) { return p.c2 * p.c2 / (4.0 * p.c4); },
                          [](const PiecewiseLinear& p) {
                              double m = 0.0;
                              for (const auto& [x, v] : p.knots()) m = std::max(m, std::abs(v));
                              return m;
                          },
                      },
                      spec);
}

/// Abscissae where V jumps. Only the square well has any.
inline std::vector<double> jump_points(const PotentialSpec& spec) {
    if (const auto* w = std::get_if<SquareWell>(&spec)) return {-w->half_width, w->half_width};
    return {};
}

inline bool is_even(const PotentialSpec& spec) { return !std::holds_alternative<PiecewiseLinear>(spec); }

inline std::string name(const PotentialSpec& spec) {
    return std::visit(overloaded{
                          [](const ZeroPotential&) { return std::string("zero"); },
                          [](const Harmonic&) { return std::string("harmonic"); },
                          [](const SquareWell&) { return std::string("square-well"); },
                          [](const DoubleWell&) { return std::string("double-well"); },
                          [](const PiecewiseLinear&) { return std::string("piecewise"); },
                      },
                      spec);
}

/// V_a: the base potential on [-a, a] with infinite walls, i.e. Dirichlet conditions at +-a.
class WalledPotential {
public:
    WalledPotential(PotentialSpec base, double half_width) : base_(std::move(base)), a_(half_width) {
        if (!(a_ > 0.0) || !std::isfinite(a_)) throw InvalidParameter("wall: half width a must be > 0");
    }

    double half_width() const { return a_; }
    const PotentialSpec& base() const { return base_; }

    double operator()(double x) const {
        if (!(std::abs(x) <= a_)) throw InvalidParameter("walled potential queried outside [-a, a]");
        return evaluate(base_, x);
    }

private:
    PotentialSpec base_;
    double a_;
};

inline WalledPotential wall(const PotentialSpec& spec, double a) { return WalledPotential(spec, a); }

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Reads two-column "x,V" CSV. A non-numeric first line is taken as a header; '#' starts a comment.
inline PiecewiseLinear parse_piecewise_csv(std::istream& in) {
    std::vector<std::pair<double, double>> knots;
    std::string line;
    bool first_content = true;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = detail::trim(view);
        if (view.empty()) continue;
        const auto comma = view.find(',');
        double x = 0.0, v = 0.0;
        const bool ok = comma != std::string_view::npos && detail::parse_double(view.substr(0, comma), x) &&
                        detail::parse_double(view.substr(comma + 1), v);
        if (!ok) {
            if (first_content) {
                first_content = false;
                continue;
            }
            throw InvalidParameter("piecewise CSV: malformed line " + std::to_string(line_no));
        }
        first_content = false;
        knots.emplace_back(x, v);
    }
    return PiecewiseLinear(std::move(knots));
}

inline PiecewiseLinear load_piecewise_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open potential file: " + path);
    return parse_piecewise_csv(in);
}

}  // namespace sturm
