#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "catalog.hpp"
#include "sturm/homotopy.hpp"
#include "sturm/matrix_oracle.hpp"
#include "sturm/nodes.hpp"
#include "sturm/solver.hpp"

using namespace sturm;
using sturm::testing::catalog;
using sturm::testing::grid_of;

namespace {

const Grid& well() {
    static const Grid g = build_grid(wall(ZeroPotential{}, 1.0), 4001);
    return g;
}

const std::vector<Eigenpair>& well_states() {
    static const auto pairs = solve_lowest(well(), 4);
    return pairs;
}

}  // namespace

TEST(FindNodes, InfiniteWell) {
    const auto& s = well_states();
    EXPECT_EQ(find_nodes(s[0]).count, 0);
    const auto n2 = find_nodes(s[1]);
    ASSERT_EQ(n2.count, 1);
    EXPECT_NEAR(n2.positions[0], 0.0, 1e-6);
    const auto n3 = find_nodes(s[2]);
    ASSERT_EQ(n3.count, 2);
    EXPECT_NEAR(n3.positions[0], -1.0 / 3.0, 1e-6);
    EXPECT_NEAR(n3.positions[1], 1.0 / 3.0, 1e-6);
    EXPECT_EQ(n3.eigen_index, 3);
    EXPECT_DOUBLE_EQ(n3.refinement_tol, well().dx());
}

TEST(FindNodes, TouchIsNotANode) {
    const Grid g = build_grid(wall(ZeroPotential{}, 1.0), 5);
    Eigenpair p{1, 0.0, {0.0, 1.0, 0.0, 1.0, 0.0}, g, Method::analytic};
    EXPECT_EQ(find_nodes(p).count, 0);
}

TEST(FindNodes, JitterWithinTwoCellsCollapses) {
    const Grid g = build_grid(wall(ZeroPotential{}, 1.0), 11);
    // +,-,+ within one cell of each other: the pair of crossings is numerical noise.
    Eigenpair p{1, 0.0, {0.0, 1.0, 1.0, 1.0, 1e-9, -1e-9, 1e-9, 1.0, 1.0, 1.0, 0.0}, g, Method::analytic};
    EXPECT_EQ(find_nodes(p).count, 0);
}

TEST(VerifyNodeCount, Examples) {
    const auto osc = solve_state(build_grid(wall(Harmonic{1.0}, 8.0), 4001), 5);
    const auto r = verify_node_count(osc);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.found, 4);
    EXPECT_TRUE(verify_node_count(well_states()[0]).passed);

    auto mislabeled = well_states()[0];
    mislabeled.n = 2;
    const auto bad = verify_node_count(mislabeled);
    EXPECT_FALSE(bad.passed);
    EXPECT_EQ(bad.expected, 1);
    EXPECT_EQ(bad.found, 0);
}

TEST(VerifyInterlacing, Examples) {
    const auto& s = well_states();
    const auto r12 = verify_interlacing(s[0], s[1]);
    EXPECT_TRUE(r12.passed);
    ASSERT_EQ(r12.intervals_checked.size(), 1u);
    EXPECT_EQ(r12.intervals_checked[0], std::make_pair(-1.0, 1.0));
    ASSERT_TRUE(r12.witnesses[0].has_value());
    EXPECT_NEAR(*r12.witnesses[0], 0.0, 1e-6);

    const auto r23 = verify_interlacing(s[1], s[2]);
    EXPECT_TRUE(r23.passed);
    ASSERT_EQ(r23.witnesses.size(), 2u);
    EXPECT_NEAR(*r23.witnesses[0], -1.0 / 3.0, 1e-6);
    EXPECT_NEAR(*r23.witnesses[1], 1.0 / 3.0, 1e-6);

    EXPECT_THROW(verify_interlacing(s[2], s[1]), PreconditionError);
    EXPECT_THROW(verify_interlacing(s[1], s[1]), PreconditionError);
}

TEST(VerifyInterlacing, MissingWitnessFails) {
    auto fake = well_states()[0];
    fake.n = 3;  // ground state posing as a higher level: no node between the walls
    const auto r = verify_interlacing(well_states()[0], fake);
    EXPECT_FALSE(r.passed);
    EXPECT_FALSE(r.witnesses[0].has_value());
}

TEST(VerifyInterlacing, GridMismatch) {
    const auto other = solve_state(build_grid(wall(ZeroPotential{}, 1.0), 2001), 2);
    EXPECT_THROW(verify_interlacing(well_states()[0], other), GridMismatch);
}

TEST(VerifySeparation, FreeSineCosine) {
    const Grid g = build_grid(wall(ZeroPotential{}, 6.0), 4001);
    const auto r = verify_separation(g, 1.0);
    EXPECT_EQ(r.verdict, SeparationVerdict::alternating);
    EXPECT_TRUE(r.ok());
    // u = sin(x + 6) vanishes at x = k pi - 6, w = cos(x + 6) at (k + 1/2) pi - 6.
    ASSERT_GE(r.u_zeros.size(), 3u);
    EXPECT_NEAR(r.u_zeros[0], -6.0, 1e-9);
    EXPECT_NEAR(r.u_zeros[1], std::numbers::pi - 6.0, 1e-5);
    EXPECT_NEAR(r.w_zeros[0], std::numbers::pi / 2.0 - 6.0, 1e-5);
}

TEST(VerifySeparation, ZeroEnergyIsVacuous) {
    const auto r = verify_separation(well(), 0.0);
    EXPECT_EQ(r.verdict, SeparationVerdict::vacuous);
    EXPECT_TRUE(r.ok());
}

TEST(VerifySeparation, OscillatorAtE10) {
    const auto r = verify_separation(build_grid(wall(Harmonic{1.0}, 8.0), 4001), 10.0);
    EXPECT_EQ(r.verdict, SeparationVerdict::alternating);
}

TEST(VerifySeparation, RandomEnergiesOnCatalog) {
    std::mt19937_64 rng(7);
    for (const auto& prob : catalog()) {
        const Grid g = grid_of(prob);
        std::uniform_real_distribution<double> dist(g.v_min(), g.v_min() + 100.0);
        for (int i = 0; i < 20; ++i) {
            const double e = dist(rng);
            const auto r = verify_separation(g, e);
            EXPECT_TRUE(r.ok()) << prob.label << " E=" << e;
        }
    }
}

TEST(CriticalTouch, Examples) {
    EXPECT_TRUE(detect_critical_touch(well_states()[2]).empty());

    const Grid g = build_grid(wall(ZeroPotential{}, 1.0), 9);
    Eigenpair zero{1, 0.0, std::vector<double>(9, 0.0), g, Method::analytic};
    EXPECT_EQ(detect_critical_touch(zero).size(), 7u);

    const auto dw = solve_state(build_grid(wall(DoubleWell{1.0, 5.0}, 6.0), 4001), 1);
    EXPECT_TRUE(detect_critical_touch(dw).empty());
}

TEST(CriticalTouch, FlagsTangentialZero) {
    const Grid g = build_grid(wall(ZeroPotential{}, 1.0), 401);
    std::vector<double> psi(g.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double x = g.x(i);
        psi[i] = (1.0 - x * x) * (x - 0.5) * (x - 0.5);
    }
    Eigenpair p{1, 0.0, psi, g, Method::analytic};
    const auto flagged = detect_critical_touch(p);
    ASSERT_EQ(flagged.size(), 1u);
    EXPECT_DOUBLE_EQ(flagged[0], 0.5);
}

TEST(NodeProperties, CountsBothSolvers) {
    for (const auto& prob : catalog()) {
        const Grid g = grid_of(prob);
        for (const auto& pairs : {solve_lowest(g, 10), matrix_oracle(g, 10)}) {
            for (const auto& p : pairs) {
                EXPECT_TRUE(verify_node_count(p).passed) << prob.label << " " << to_string(p.method) << " n=" << p.n;
                EXPECT_TRUE(detect_critical_touch(p).empty()) << prob.label << " n=" << p.n;
            }
        }
    }
}

TEST(NodeProperties, InterlacingUpToEight) {
    for (const auto& prob : catalog()) {
        const auto pairs = solve_lowest(grid_of(prob), 8);
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j) EXPECT_TRUE(verify_interlacing(pairs[i], pairs[j]).passed) << prob.label;
    }
}

TEST(NodeProperties, NodesAreSymmetricForEvenPotentials) {
    for (const auto& prob : catalog()) {
        for (const auto& p : solve_lowest(grid_of(prob), 8)) {
            const auto nodes = find_nodes(p);
            for (double x : nodes.positions) {
                double best = 1e300;
                for (double y : nodes.positions) best = std::min(best, std::abs(x + y));
                EXPECT_LE(best, 2.0 * nodes.refinement_tol) << prob.label << " n=" << p.n;
            }
        }
    }
}

TEST(NodeProperties, AnalyticSmallWellNodes) {
    const auto p = analytic_small_a(3, 1.0);
    const auto nodes = find_nodes(p);
    ASSERT_EQ(nodes.count, 2);
    EXPECT_NEAR(nodes.positions[0], -1.0 / 3.0, 1e-6);
}
