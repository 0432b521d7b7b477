#include <gtest/gtest.h>

#include <cmath>

#include "sturm/grid.hpp"

using namespace sturm;

TEST(Grid, FivePointZeroWell) {
    const Grid g = build_grid(wall(ZeroPotential{}, 1.0), 5);
    EXPECT_DOUBLE_EQ(g.dx(), 0.5);
    const std::vector<double> xs{-1.0, -0.5, 0.0, 0.5, 1.0};
    EXPECT_EQ(g.x_samples(), xs);
    for (double v : g.v()) EXPECT_EQ(v, 0.0);
}

TEST(Grid, FivePointHarmonic) {
    const Grid g = build_grid(wall(Harmonic{1.0}, 2.0), 5);
    const std::vector<double> v(g.v().begin(), g.v().end());
    EXPECT_EQ(v, (std::vector<double>{4.0, 1.0, 0.0, 1.0, 4.0}));
}

TEST(Grid, RejectsEvenOrTinySizes) {
    EXPECT_THROW(build_grid(wall(ZeroPotential{}, 1.0), 4), InvalidParameter);
    EXPECT_THROW(build_grid(wall(ZeroPotential{}, 1.0), 1), InvalidParameter);
    EXPECT_NO_THROW(build_grid(wall(ZeroPotential{}, 1.0), 3));
}

TEST(Grid, WallsAreExactAndOriginSampled) {
    const Grid g = build_grid(wall(ZeroPotential{}, 0.7), 4001);
    EXPECT_EQ(g.x(0), -0.7);
    EXPECT_EQ(g.x(4000), 0.7);
    EXPECT_EQ(g.x(g.center()), 0.0);
}

TEST(Grid, JumpNodesGetCellAverage) {
    // dx = 0.5: the node at x = +-1 has half its cell inside the well.
    const Grid g = build_grid(wall(SquareWell{4.0, 1.0}, 2.0), 9);
    EXPECT_DOUBLE_EQ(g.v()[2], -2.0);
    EXPECT_DOUBLE_EQ(g.v()[6], -2.0);
    EXPECT_DOUBLE_EQ(g.v()[4], -4.0);
    EXPECT_DOUBLE_EQ(g.v()[0], 0.0);
}

TEST(Grid, SpacingGridsAreNested) {
    const Grid small = build_grid_with_spacing(Harmonic{1.0}, 0.01, 100);
    const Grid large = build_grid_with_spacing(Harmonic{1.0}, 0.01, 300);
    EXPECT_DOUBLE_EQ(small.a(), 1.0);
    for (std::size_t i = 0; i < small.size(); ++i) {
        EXPECT_EQ(small.x(i), large.x(i + 200));
        EXPECT_EQ(small.v()[i], large.v()[i + 200]);
    }
}

TEST(Grid, Trapezoid) {
    const std::vector<double> f{0.0, 1.0, 2.0, 3.0};
    EXPECT_DOUBLE_EQ(trapezoid(f, 1.0), 4.5);
    EXPECT_DOUBLE_EQ(trapezoid_product(f, f, 1.0), 0.5 * 9.0 + 1.0 + 4.0);
}
