#include <gtest/gtest.h>

#include <cmath>

#include "ebench/diagnostics.hpp"

using namespace ebench;

namespace {

Field fill(const Grid& g, const std::function<PrimitiveState(double, double)>& q) {
  Field f(g);
  GasModel gas(1.4);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f.set(i, j, to_conserved(q(g.xc(i), g.yc(j)), gas).vec());
  return f;
}

}  // namespace

TEST(Symmetry, RotationAndDiagonal) {
  Grid g = Grid::make(8, 8, -1.0, 1.0, -1.0, 1.0);
  // Solid-body rotation is invariant under a 90 degree turn.
  Field rot = fill(g, [](double x, double y) {
    return PrimitiveState{1.0 + x * x + y * y, -y, x, 1.0};
  });
  EXPECT_EQ(rotation_symmetry_error(rot), 0.0);
  Field diag = fill(g, [](double x, double y) { return PrimitiveState{1.0 + x * y, x, y, 1.0}; });
  EXPECT_EQ(diagonal_symmetry_error(diag), 0.0);
  Field skew = fill(g, [](double x, double) { return PrimitiveState{1.0 + 0.5 * x, 0.0, 0.0, 1.0}; });
  EXPECT_GT(diagonal_symmetry_error(skew), 0.1);
  EXPECT_GT(rotation_symmetry_error(skew), 0.1);
}

TEST(Conservation, DriftIncludesOutflow) {
  Grid g = Grid::make(4, 4, 0.0, 1.0, 0.0, 1.0);
  Field f = fill(g, [](double, double) { return PrimitiveState{1.0, 0.0, 0.0, 1.0}; });
  Totals t0 = field_totals(f);
  Field g2 = f;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) g2.set(i, j, {0.5, 0.0, 0.0, 1.25});
  ConservationDrift d = conservation_drift(t0, g2, {0.5, 0.0, 0.0, 1.25});
  EXPECT_NEAR(d.max_relative(), 0.0, 1e-15);
  d = conservation_drift(t0, g2, {});
  EXPECT_NEAR(d.relative[0], 0.5, 1e-15);
  EXPECT_NEAR(d.relative[3], 0.5, 1e-15);
  // Zero initial momentum is scaled by sqrt(2 M E).
  EXPECT_NEAR(d.relative[1], 0.0, 1e-15);
}

TEST(Errors, DensityL1WithMask) {
  Grid g = Grid::make(10, 1, 0.0, 1.0, 0.0, 1.0);
  Field a = fill(g, [](double, double) { return PrimitiveState{2.0, 0.0, 0.0, 1.0}; });
  Field b = fill(g, [](double x, double) { return PrimitiveState{x < 0.5 ? 2.0 : 2.2, 0.0, 0.0, 1.0}; });
  OracleError e = density_l1_error(b, a);
  EXPECT_NEAR(e.relative_l1, 0.05, 1e-14);
  EXPECT_NEAR(e.mean_abs, 0.1, 1e-14);
  EXPECT_EQ(e.cells, 10u);
  OracleError m = density_l1_error(b, a, [](double x, double) { return x < 0.5; });
  EXPECT_EQ(m.cells, 5u);
  EXPECT_EQ(m.relative_l1, 0.0);
  EXPECT_NEAR(min_density(b), 2.0, 1e-15);
}

TEST(Profiles, RestrictionAndWaves) {
  Grid g = Grid::make(8, 1, 0.0, 1.0, 0.0, 1.0);
  Field f = fill(g, [](double x, double) { return PrimitiveState{1.0 + x, 0.0, 0.0, 1.0}; });
  auto r = restrict_density(f, 2);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_NEAR(r[0], 1.125, 1e-15);
  EXPECT_NEAR(profile_l1(f, restrict_density(f, 1)), 0.0, 1e-15);
  EXPECT_NEAR(density_variation(f), 0.875, 1e-14);

  Grid h = Grid::make(100, 1, 0.0, 1.0, 0.0, 1.0);
  Field s = fill(h, [](double x, double) {
    return PrimitiveState{x < 0.3 ? 3.0 : (x < 0.62 ? 2.0 : 1.0), 0.0, 0.0, 1.0};
  });
  WavePositions w = locate_waves(s, 1.0, 2.0, 3.0);
  EXPECT_NEAR(w.shock, 0.62, 0.011);
  EXPECT_NEAR(w.contact, 0.30, 0.011);
  EXPECT_NEAR(w.post_shock_density, 2.0, 1e-12);
}

TEST(Quadrants, FallbackCount) {
  Grid g = Grid::make(4, 4, 0.0, 1.0, 0.0, 1.0);
  std::vector<std::uint32_t> per(g.size(), 0);
  per[g.index(3, 3)] = 2;
  per[g.index(0, 3)] = 5;
  EXPECT_EQ(fallbacks_in_quadrant1(per, g, 0.5, 0.5), 2);
  EXPECT_EQ(fallbacks_in_quadrant1(per, g, 0.0, 0.5), 7);
}

TEST(Mixing, WidthOfTheHeavyLightZone) {
  Grid g = Grid::make(4, 40, 0.0, 0.25, 0.0, 1.0);
  // Heavy fluid below, with fingers reaching y = 0.6 and y = 0.4 in
  // different columns.
  Field f = fill(g, [](double x, double y) {
    double edge = x < 0.125 ? 0.6 : 0.4;
    return PrimitiveState{y < edge ? 2.0 : 1.0, 0.0, 0.0, 1.0};
  });
  EXPECT_NEAR(mixing_width(f, 1.5), 0.2 - g.dy, 1e-12);
  Field flat = fill(g, [](double, double y) { return PrimitiveState{y < 0.5 ? 2.0 : 1.0, 0.0, 0.0, 1.0}; });
  EXPECT_EQ(mixing_width(flat, 1.5), 0.0);
}
