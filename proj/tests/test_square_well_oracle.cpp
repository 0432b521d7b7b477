#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sturm/grid.hpp"
#include "sturm/solver.hpp"
#include "sturm/square_well_oracle.hpp"

using namespace sturm;

TEST(SquareWellOracle, TwoLevelsForReferenceWell) {
    const auto levels = square_well_bound_states(4.0, 1.0);
    ASSERT_EQ(levels.size(), 2u);
    EXPECT_TRUE(levels[0].even);
    EXPECT_FALSE(levels[1].even);
    EXPECT_NEAR(levels[0].energy, -2.939374931781725, 1e-10);
    EXPECT_NEAR(levels[1].energy, -0.407101483641299, 1e-10);
}

TEST(SquareWellOracle, MatchingConditionsHold) {
    for (double v0 : {0.5, 4.0, 30.0}) {
        for (const auto& l : square_well_bound_states(v0, 1.3)) {
            const double k = std::sqrt(v0 - l.kappa * l.kappa);
            const double residual = l.even ? k * std::tan(k * 1.3) - l.kappa : -k / std::tan(k * 1.3) - l.kappa;
            EXPECT_NEAR(residual, 0.0, 1e-8) << v0 << " n=" << l.n;
            EXPECT_DOUBLE_EQ(l.energy, -l.kappa * l.kappa);
        }
    }
}

TEST(SquareWellOracle, LevelCountFollowsWellStrength) {
    // N = ceil(2 b sqrt(V0) / pi) bound levels.
    for (double v0 : {0.1, 2.0, 4.0, 10.0, 50.0, 200.0}) {
        const auto expected = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(v0) / std::numbers::pi));
        EXPECT_EQ(square_well_bound_states(v0, 1.0).size(), expected) << v0;
    }
}

TEST(SquareWellOracle, ParityAlternatesAndEnergiesIncrease) {
    const auto levels = square_well_bound_states(200.0, 1.0);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        EXPECT_EQ(levels[i].even, i % 2 == 0);
        EXPECT_EQ(levels[i].n, static_cast<int>(i) + 1);
        if (i > 0) {
            EXPECT_LT(levels[i - 1].energy, levels[i].energy);
        }
        EXPECT_LT(levels[i].energy, 0.0);
        EXPECT_GT(levels[i].energy, -200.0);
    }
}

TEST(SquareWellOracle, RejectsBadParameters) {
    EXPECT_THROW(square_well_bound_states(0.0, 1.0), InvalidParameter);
    EXPECT_THROW(square_well_bound_states(4.0, -1.0), InvalidParameter);
}

TEST(SquareWellOracle, WideWallsApproachOracle) {
    const Grid g = build_grid_with_spacing(SquareWell{4.0, 1.0}, 0.001, 20000);
    const auto pairs = solve_lowest(g, 2);
    const auto levels = square_well_bound_states(4.0, 1.0);
    EXPECT_NEAR(pairs[0].energy, levels[0].energy, 1e-6);
    EXPECT_NEAR(pairs[1].energy, levels[1].energy, 1e-6);
}
