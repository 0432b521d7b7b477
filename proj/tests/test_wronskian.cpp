#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catalog.hpp"
#include "sturm/homotopy.hpp"
#include "sturm/solver.hpp"
#include "sturm/wronskian.hpp"

using namespace sturm;
using sturm::testing::catalog;
using sturm::testing::grid_of;

namespace {

std::vector<Eigenpair> well_states(std::size_t n_points, int k) {
    return solve_lowest(build_grid(wall(ZeroPotential{}, 1.0), n_points), k);
}

}  // namespace

TEST(WronskianSeries, SelfIsZero) {
    const auto s = well_states(401, 2);
    for (double w : wronskian_series(s[1], s[1]).values) EXPECT_EQ(w, 0.0);
}

TEST(WronskianSeries, SwapNegatesExactly) {
    for (const auto& prob : catalog()) {
        const auto s = solve_lowest(grid_of(prob, 1001), 3);
        const auto w12 = wronskian_series(s[0], s[2]);
        const auto w21 = wronskian_series(s[2], s[0]);
        for (std::size_t i = 0; i < w12.values.size(); ++i) EXPECT_EQ(w12.values[i], -w21.values[i]) << prob.label;
    }
}

TEST(WronskianSeries, ValueAtCentre) {
    const auto s = well_states(4001, 2);
    const auto w = wronskian_series(s[0], s[1]);
    EXPECT_NEAR(w.values[2000], std::numbers::pi, 1e-4);
}

TEST(WronskianSeries, VanishesAtWalls) {
    for (const auto& prob : catalog()) {
        const auto s = solve_lowest(grid_of(prob), 3);
        const auto w = wronskian_series(s[0], s[1]);
        EXPECT_LT(std::abs(w.values.front()), 1e-8) << prob.label;
        EXPECT_LT(std::abs(w.values.back()), 1e-8) << prob.label;
    }
}

TEST(WronskianSeries, GridMismatch) {
    const auto a = well_states(401, 1);
    const auto b = well_states(801, 2);
    EXPECT_THROW(wronskian_series(a[0], b[1]), GridMismatch);
    EXPECT_THROW(check_derivative_identity(a[0], b[1]), GridMismatch);
    EXPECT_THROW(check_integral_identity(a[0], b[1]), GridMismatch);
}

TEST(DerivativeIdentity, InfiniteWellPair) {
    const auto coarse = well_states(2001, 2);
    const auto fine = well_states(4001, 2);
    const auto rc = check_derivative_identity(coarse[0], coarse[1]);
    const auto rf = check_derivative_identity(fine[0], fine[1]);
    EXPECT_LT(rc.max_residual, 1e-4);
    EXPECT_DOUBLE_EQ(rc.dx, 0.001);
    EXPECT_GE(rc.max_residual / rf.max_residual, 3.5);
    EXPECT_LE(rc.max_residual / rf.max_residual, 4.5);
    EXPECT_THROW(check_derivative_identity(coarse[0], coarse[0]), PreconditionError);
}

TEST(DerivativeIdentity, SecondOrderOnSmoothPotentials) {
    for (const auto& prob : catalog()) {
        if (prob.label == "square-well") continue;  // see the next test
        const auto c = solve_lowest(grid_of(prob, 2001), 4);
        const auto f = solve_lowest(grid_of(prob, 4001), 4);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const double ratio = check_derivative_identity(c[i], c[j]).max_residual /
                                     check_derivative_identity(f[i], f[j]).max_residual;
                EXPECT_GE(ratio, 3.5) << prob.label << " (" << i + 1 << "," << j + 1 << ")";
                EXPECT_LE(ratio, 4.5) << prob.label << " (" << i + 1 << "," << j + 1 << ")";
            }
    }
}

// psi''' jumps where V does, so the central difference of W carries an O(dx) error at the two
// grid cells straddling +-b: the residual there halves, not quarters, with dx.
TEST(DerivativeIdentity, FirstOrderAcrossPotentialJump) {
    const auto& prob = catalog()[2];
    ASSERT_EQ(prob.label, "square-well");
    const auto c = solve_lowest(grid_of(prob, 2001), 4);
    const auto f = solve_lowest(grid_of(prob, 4001), 4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const auto rc = check_derivative_identity(c[i], c[j]);
            const auto rf = check_derivative_identity(f[i], f[j]);
            const double ratio = rc.max_residual / rf.max_residual;
            EXPECT_GE(ratio, 1.6) << i + 1 << "," << j + 1;
            EXPECT_LE(ratio, 2.5) << i + 1 << "," << j + 1;
            EXPECT_NEAR(std::abs(rf.at_x), 1.0, 2.0 * rf.dx);
        }
}

TEST(IntegralIdentity, InfiniteWellExamples) {
    const auto s = well_states(4001, 3);
    const auto r12 = check_integral_identity(s[0], s[1]);
    ASSERT_EQ(r12.intervals.size(), 1u);
    EXPECT_EQ(r12.intervals[0].x1, -1.0);
    EXPECT_EQ(r12.intervals[0].x2, 1.0);
    EXPECT_LT(r12.intervals[0].residual, 1e-4);
    EXPECT_NEAR(r12.intervals[0].lhs, 0.0, 1e-4);

    const auto r23 = check_integral_identity(s[1], s[2]);
    ASSERT_EQ(r23.intervals.size(), 2u);
    EXPECT_NEAR(r23.intervals[0].x2, 0.0, 1e-9);
    EXPECT_LT(r23.intervals[0].residual, 1e-4);
    ASSERT_TRUE(r23.intervals[0].witness.has_value());
    EXPECT_NEAR(*r23.intervals[0].witness, -1.0 / 3.0, 1e-6);
    EXPECT_TRUE(r23.all_witnessed);

    EXPECT_THROW(check_integral_identity(s[2], s[1]), PreconditionError);
}

TEST(IntegralIdentity, ClosedFormForSecondAndThirdStates) {
    // psi_2 = -sin(pi x), psi_3 = -cos(3 pi x / 2) after sign fixing; on (-1, 0):
    // LHS = psi_2'(0) psi_3(0) - psi_2'(-1) psi_3(-1) = (-pi)(-1) - 0 = pi.
    const auto s = well_states(4001, 3);
    const auto r = check_integral_identity(s[1], s[2]);
    EXPECT_NEAR(r.intervals[0].lhs, std::numbers::pi, 1e-4);
    EXPECT_NEAR(r.intervals[0].rhs, std::numbers::pi, 1e-4);
}

TEST(IntegralIdentity, CatalogPairsUpToFive) {
    for (const auto& prob : catalog()) {
        const auto s = solve_lowest(grid_of(prob), 5);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                const auto r = check_integral_identity(s[i], s[j]);
                EXPECT_TRUE(r.all_witnessed);
                for (const auto& iv : r.intervals) EXPECT_LT(iv.residual, 1e-4) << prob.label << " " << i + 1 << "," << j + 1;
            }
    }
}

TEST(IntegralIdentity, NoWitnessMeansOppositeSigns) {
    // A node-free function in place of psi_2: the identity cannot hold, and the two sides disagree in sign.
    const auto s = well_states(2001, 2);
    auto impostor = analytic_small_a(1, 1.0, 2001);
    impostor.n = 3;
    impostor.energy = s[1].energy + 5.0;
    const auto r = check_integral_identity(s[1], impostor);
    EXPECT_FALSE(r.all_witnessed);
    bool any = false;
    for (const auto& iv : r.intervals)
        if (!iv.witness) {
            any = true;
            EXPECT_TRUE(iv.opposite_signs);
            EXPECT_GT(iv.residual, 0.1);
        }
    EXPECT_TRUE(any);
}
