#pragma once

// Command-line front end: solve, nodes, sweep, verify, oracle.
//
// Exit codes: 0 success, 1 solver or verification failure, 2 usage or configuration error.
// Every output starts with the effective configuration (CSV: "# key=value" lines, JSON: a
// "config" object). Thread count and output path are not echoed, so results are byte-identical
// for any --workers value.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sturm/error.hpp"
#include "sturm/homotopy.hpp"
#include "sturm/matrix_oracle.hpp"
#include "sturm/nodes.hpp"
#include "sturm/potential.hpp"
#include "sturm/solver.hpp"
#include "sturm/square_well_oracle.hpp"
#include "sturm/wronskian.hpp"

namespace sturm::cli {

enum class ExitCode : int { ok = 0, failure = 1, usage = 2 };

struct RunConfig {
    std::string command;
    std::string potential = "zero";
    double k_stiffness = 1.0;
    double v0 = 4.0;
    double b = 1.0;
    double c4 = 1.0;
    double c2 = 5.0;
    std::string points_file;
    double a = 1.0;
    std::size_t n_points = 4001;
    int k = 3;
    std::string method = "numerov";
    double a_min = 1.5;
    double a_max = 30.0;
    int a_count = 40;
    int n_max = 3;
    double dx = 0.001;
    double margin = std::numeric_limits<double>::quiet_NaN();
    double bisection_tol = 1e-12;
    double tolerance = 2.0;
    double touch_tol = 1e-5;
    int random_energies = 20;
    double energy_span = 100.0;
    std::uint64_t seed = 12345;
    std::string format = "csv";
    std::string out;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

/// Shortest decimal string that reads back to the same double.
inline std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline PotentialSpec make_potential(const RunConfig& c) {
    if (c.potential == "zero") return ZeroPotential{};
    if (c.potential == "harmonic") return Harmonic{c.k_stiffness};
    if (c.potential == "square-well") return SquareWell{c.v0, c.b};
    if (c.potential == "double-well") return DoubleWell{c.c4, c.c2};
    if (c.potential == "piecewise") {
        if (c.points_file.empty()) throw InvalidParameter("piecewise potential needs --points-file");
        return load_piecewise_csv(c.points_file);
    }
    throw InvalidParameter("unknown potential: " + c.potential);
}

namespace detail {

using nlohmann::ordered_json;

inline ordered_json potential_config(const RunConfig& c) {
    ordered_json j;
    j["potential"] = c.potential;
    if (c.potential == "harmonic") j["k-stiffness"] = c.k_stiffness;
    if (c.potential == "square-well") {
        j["v0"] = c.v0;
        j["b"] = c.b;
    }
    if (c.potential == "double-well") {
        j["c4"] = c.c4;
        j["c2"] = c.c2;
    }
    if (c.potential == "piecewise") j["points-file"] = c.points_file;
    return j;
}

inline ordered_json effective_config(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    if (c.command == "oracle") {
        j["v0"] = c.v0;
        j["b"] = c.b;
        return j;
    }
    j.update(potential_config(c));
    if (c.command == "sweep") {
        j["a-min"] = c.a_min;
        j["a-max"] = c.a_max;
        j["a-count"] = c.a_count;
        j["n-max"] = c.n_max;
        if (c.dx > 0.0)
            j["dx"] = c.dx;
        else
            j["n-points"] = c.n_points;
        if (!std::isnan(c.margin)) j["margin"] = c.margin;
        j["bisection-tol"] = c.bisection_tol;
        return j;
    }
    j["a"] = c.a;
    j["n-points"] = c.n_points;
    j["k"] = c.k;
    j["bisection-tol"] = c.bisection_tol;
    if (c.command == "solve" || c.command == "nodes") j["method"] = c.method;
    if (c.command == "verify") {
        j["tolerance"] = c.tolerance;
        j["touch-tol"] = c.touch_tol;
        j["random-energies"] = c.random_energies;
        j["energy-span"] = c.energy_span;
        j["seed"] = c.seed;
    }
    return j;
}

inline std::string scalar_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt(v.get<double>());
    return v.dump();
}

inline void csv_header(std::ostream& os, const RunConfig& c) {
    const auto cfg = effective_config(c);
    for (const auto& [key, val] : cfg.items()) os << "# " << key << '=' << scalar_text(val) << '\n';
}

inline std::string join_positions(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ';';
        s += fmt(xs[i]);
    }
    return s;
}

/// Stage marker so errors thrown while setting up map to exit 2 and later ones to exit 1.
struct SetupError : Error {
    using Error::Error;
};

inline Grid setup_grid(const RunConfig& c, const PotentialSpec& spec) {
    if (c.n_points < kMinShootingPoints)
        throw SetupError("n-points must be odd and >= " + std::to_string(kMinShootingPoints));
    try {
        return build_grid(wall(spec, c.a), c.n_points);
    } catch (const InvalidParameter& e) {
        throw SetupError(e.what());
    }
}

inline SolveOptions solve_options(const RunConfig& c) {
    if (!(c.bisection_tol >= 0.0) || !std::isfinite(c.bisection_tol)) throw SetupError("bisection-tol must be >= 0");
    SolveOptions o;
    o.bisection_tol = c.bisection_tol;
    return o;
}

inline std::vector<Eigenpair> solve_states(const RunConfig& c, const Grid& grid) {
    if (c.k < 1) throw SetupError("k must be >= 1");
    const auto opt = solve_options(c);
    if (c.method == "matrix") return matrix_oracle(grid, c.k);
    return solve_lowest(grid, c.k, opt);
}

inline ExitCode cmd_solve(const RunConfig& c, std::ostream& os) {
    const auto spec = make_potential(c);
    const Grid grid = setup_grid(c, spec);
    const auto pairs = solve_states(c, grid);
    if (c.format == "json") {
        ordered_json j;
        j["config"] = effective_config(c);
        j["states"] = ordered_json::array();
        for (const auto& p : pairs) {
            const auto nodes = find_nodes(p);
            j["states"].push_back({{"n", p.n}, {"energy", p.energy}, {"node_count", nodes.count}, {"nodes", nodes.positions}});
        }
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, c);
        os << "n,energy,node_count,node_positions\n";
        for (const auto& p : pairs) {
            const auto nodes = find_nodes(p);
            os << p.n << ',' << fmt(p.energy) << ',' << nodes.count << ',' << join_positions(nodes.positions) << '\n';
        }
    }
    return ExitCode::ok;
}

inline ExitCode cmd_nodes(const RunConfig& c, std::ostream& os) {
    const auto spec = make_potential(c);
    const Grid grid = setup_grid(c, spec);
    const auto pairs = solve_states(c, grid);
    if (c.format == "json") {
        ordered_json j;
        j["config"] = effective_config(c);
        j["nodes"] = ordered_json::array();
        for (const auto& p : pairs) j["nodes"].push_back({{"n", p.n}, {"positions", find_nodes(p).positions}});
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, c);
        os << "n,node_index,x\n";
        for (const auto& p : pairs) {
            const auto nodes = find_nodes(p);
            for (std::size_t i = 0; i < nodes.positions.size(); ++i)
                os << p.n << ',' << i + 1 << ',' << fmt(nodes.positions[i]) << '\n';
        }
    }
    return ExitCode::ok;
}

inline ExitCode cmd_sweep(const RunConfig& c, std::ostream& os) {
    const auto spec = make_potential(c);
    SweepConfig cfg;
    try {
        cfg.a_schedule = geometric_schedule(c.a_min, c.a_max, c.a_count);
        cfg.n_max = c.n_max;
        cfg.n_points = c.n_points;
        if (c.dx > 0.0) cfg.spacing = c.dx;
        if (!std::isnan(c.margin)) cfg.classification_margin = c.margin;
        cfg.workers = c.workers;
        cfg.solve = solve_options(c);
        validate(cfg);
    } catch (const InvalidParameter& e) {
        throw SetupError(e.what());
    }
    const auto branches = sweep(spec, cfg);

    bool all_ok = true;
    std::vector<BranchReport> reports;
    for (const auto& b : branches) {
        BranchReport r;
        if (b.samples.size() >= 2) {
            r = verify_branch(b);
        } else {
            r.passed = false;
            r.violations.push_back({0, "branch has fewer than two samples"});
        }
        if (b.diagnostic) r.passed = false;
        all_ok = all_ok && r.passed;
        reports.push_back(std::move(r));
    }

    if (c.format == "json") {
        ordered_json j;
        j["config"] = effective_config(c);
        j["branches"] = ordered_json::array();
        for (std::size_t i = 0; i < branches.size(); ++i) {
            const auto& b = branches[i];
            ordered_json jb;
            jb["branch"] = b.n;
            jb["classification"] = to_string(b.classification);
            jb["verified"] = reports[i].passed;
            jb["violations"] = ordered_json::array();
            for (const auto& v : reports[i].violations) jb["violations"].push_back({{"sample", v.sample}, {"what", v.what}});
            if (b.diagnostic) jb["diagnostic"] = *b.diagnostic;
            jb["samples"] = ordered_json::array();
            for (const auto& s : b.samples) jb["samples"].push_back({{"a", s.a}, {"E", s.energy}, {"node_count", s.node_count}});
            j["branches"].push_back(std::move(jb));
        }
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, c);
        os << "branch,a,E,node_count\n";
        for (const auto& b : branches)
            for (const auto& s : b.samples) os << b.n << ',' << fmt(s.a) << ',' << fmt(s.energy) << ',' << s.node_count << '\n';
        for (std::size_t i = 0; i < branches.size(); ++i) {
            os << "# branch " << branches[i].n << ": classification=" << to_string(branches[i].classification)
               << " verified=" << (reports[i].passed ? "pass" : "fail") << '\n';
            for (const auto& v : reports[i].violations) os << "#   sample " << v.sample << ": " << v.what << '\n';
            if (branches[i].diagnostic) os << "#   " << *branches[i].diagnostic << '\n';
        }
    }
    return all_ok ? ExitCode::ok : ExitCode::failure;
}

struct CheckRow {
    std::string check;
    std::string subject;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Residual tolerance for the Wronskian identities: scale * dx^2 * (|dE| + 1) * (E_max - V_min + 1).
inline double wronskian_tolerance(double scale, const Eigenpair& p1, const Eigenpair& p2) {
    const double dx = p1.grid.dx();
    const double de = std::abs(p2.energy - p1.energy);
    const double emax = std::max(p1.energy, p2.energy) - p1.grid.v_min();
    return scale * dx * dx * (de + 1.0) * (emax + 1.0);
}

inline ExitCode cmd_verify(const RunConfig& c, std::ostream& os) {
    const auto spec = make_potential(c);
    const Grid grid = setup_grid(c, spec);
    if (c.random_energies < 0) throw SetupError("random-energies must be >= 0");
    if (!(c.tolerance >= 0.0)) throw SetupError("tolerance must be >= 0");
    const auto pairs = solve_states(c, grid);

    std::vector<CheckRow> rows;
    for (const auto& p : pairs) {
        const auto r = verify_node_count(p);
        rows.push_back({"node_count", "n=" + std::to_string(p.n), double(r.found), double(r.expected), r.passed});
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            const auto r = verify_interlacing(pairs[i], pairs[j]);
            std::size_t missing = 0;
            for (const auto& w : r.witnesses) missing += w ? 0 : 1;
            rows.push_back({"interlacing", std::to_string(pairs[i].n) + "<" + std::to_string(pairs[j].n),
                            double(missing), 0.0, r.passed});
        }
    std::mt19937_64 rng(c.seed);
    const double vmin = grid.v_min();
    for (int s = 0; s < c.random_energies; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double e = vmin + u * c.energy_span;
        const auto r = verify_separation(grid, e);
        rows.push_back({"separation", "E=" + fmt(e) + " (" + to_string(r.verdict) + ")",
                        double(r.verdict == SeparationVerdict::not_alternating), 0.0, r.ok()});
    }
    for (const auto& p : pairs) {
        const auto flagged = detect_critical_touch(p, c.touch_tol);
        rows.push_back({"critical_touch", "n=" + std::to_string(p.n), double(flagged.size()), 0.0, flagged.empty()});
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            const auto tol = wronskian_tolerance(c.tolerance, pairs[i], pairs[j]);
            const auto subject = std::to_string(pairs[i].n) + "<" + std::to_string(pairs[j].n);
            const auto d = check_derivative_identity(pairs[i], pairs[j]);
            rows.push_back({"wronskian_derivative", subject, d.max_residual, tol, d.max_residual < tol});
            const auto in = check_integral_identity(pairs[i], pairs[j]);
            rows.push_back({"wronskian_integral", subject, in.max_residual, tol, in.max_residual < tol});
        }

    bool all = true;
    for (const auto& r : rows) all = all && r.passed;
    if (c.format == "json") {
        ordered_json j;
        j["config"] = effective_config(c);
        j["passed"] = all;
        j["checks"] = ordered_json::array();
        for (const auto& r : rows)
            j["checks"].push_back({{"check", r.check}, {"subject", r.subject}, {"measured", r.measured},
                                   {"tolerance", r.tolerance}, {"passed", r.passed}});
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, c);
        os << "check,subject,measured,tolerance,passed\n";
        for (const auto& r : rows)
            os << r.check << ',' << r.subject << ',' << fmt(r.measured) << ',' << fmt(r.tolerance) << ','
               << (r.passed ? "pass" : "fail") << '\n';
    }
    return all ? ExitCode::ok : ExitCode::failure;
}

inline ExitCode cmd_oracle(const RunConfig& c, std::ostream& os) {
    std::vector<SquareWellLevel> levels;
    try {
        levels = square_well_bound_states(c.v0, c.b);
    } catch (const InvalidParameter& e) {
        throw SetupError(e.what());
    }
    if (c.format == "json") {
        ordered_json j;
        j["config"] = effective_config(c);
        j["levels"] = ordered_json::array();
        for (const auto& l : levels)
            j["levels"].push_back({{"n", l.n}, {"parity", l.even ? "even" : "odd"}, {"kappa", l.kappa}, {"energy", l.energy}});
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, c);
        os << "n,parity,kappa,energy\n";
        for (const auto& l : levels)
            os << l.n << ',' << (l.even ? "even" : "odd") << ',' << fmt(l.kappa) << ',' << fmt(l.energy) << '\n';
    }
    return ExitCode::ok;
}

}  // namespace detail

inline void add_options(CLI::App& app, RunConfig& c) {
    app.add_option("command", c.command, "solve | nodes | sweep | verify | oracle")
        ->required()
        ->check(CLI::IsMember({"solve", "nodes", "sweep", "verify", "oracle"}));
    app.add_option("--potential", c.potential, "zero | harmonic | square-well | double-well | piecewise")
        ->check(CLI::IsMember({"zero", "harmonic", "square-well", "double-well", "piecewise"}));
    app.add_option("--k-stiffness", c.k_stiffness, "harmonic: V = k x^2");
    app.add_option("--v0", c.v0, "square well depth");
    app.add_option("--b", c.b, "square well half width");
    app.add_option("--c4", c.c4, "double well: V = c4 x^4 - c2 x^2");
    app.add_option("--c2", c.c2, "double well quadratic coefficient");
    app.add_option("--points-file", c.points_file, "piecewise potential: CSV of x,V");
    app.add_option("--a", c.a, "wall half width");
    app.add_option("--n-points", c.n_points, "grid points (odd, >= 51)");
    app.add_option("--k", c.k, "number of states");
    app.add_option("--method", c.method, "numerov | matrix")->check(CLI::IsMember({"numerov", "matrix"}));
    app.add_option("--a-min", c.a_min, "sweep: smallest half width");
    app.add_option("--a-max", c.a_max, "sweep: largest half width");
    app.add_option("--a-count", c.a_count, "sweep: number of geometric steps");
    app.add_option("--n-max", c.n_max, "sweep: number of branches");
    app.add_option("--dx", c.dx, "sweep: fixed grid spacing; 0 uses --n-points per solve");
    app.add_option("--margin", c.margin, "sweep: classification margin (default 1e-3 max(1, depth))");
    app.add_option("--bisection-tol", c.bisection_tol, "relative energy bracket width");
    app.add_option("--tolerance", c.tolerance, "verify: residual scale for the Wronskian checks");
    app.add_option("--touch-tol", c.touch_tol, "verify: critical-touch threshold");
    app.add_option("--random-energies", c.random_energies, "verify: separation-check energies");
    app.add_option("--energy-span", c.energy_span, "verify: energies drawn from [min V, min V + span]");
    app.add_option("--seed", c.seed, "verify: random seed");
    app.add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", c.out, "output file (default stdout)");
    app.add_option("--workers", c.workers, "sweep: worker threads")->check(CLI::Range(1u, 1024u));
    app.set_config("--config", "", "flat key = value file; flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states of the 1D Schrodinger equation and checks of their zero structure", "sturm"};
    RunConfig cfg;
    add_options(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    }

    std::ostringstream buffer;
    ExitCode code = ExitCode::ok;
    try {
        if (cfg.command == "solve") code = detail::cmd_solve(cfg, buffer);
        else if (cfg.command == "nodes") code = detail::cmd_nodes(cfg, buffer);
        else if (cfg.command == "sweep") code = detail::cmd_sweep(cfg, buffer);
        else if (cfg.command == "verify") code = detail::cmd_verify(cfg, buffer);
        else code = detail::cmd_oracle(cfg, buffer);
    } catch (const detail::SetupError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const InvalidParameter& e) {
        // Potential parameters and input files are validated before any solve starts.
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const Error& e) {
        err << "solver failure: " << e.what() << '\n';
        return static_cast<int>(ExitCode::failure);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::failure);
    }

    if (cfg.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << cfg.out << '\n';
            return static_cast<int>(ExitCode::usage);
        }
        f << buffer.str();
    }
    if (code == ExitCode::failure) err << "one or more checks failed\n";
    return static_cast<int>(code);
}

}  // namespace sturm::cli
