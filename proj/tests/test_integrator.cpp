#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ebench/cases.hpp"
#include "ebench/diagnostics.hpp"
#include "ebench/driver.hpp"
#include "ebench/integrator.hpp"

using namespace ebench;

namespace {

Solver make_solver(const CaseSpec& c, const Grid& g, int workers = 1) {
  RunConfig cfg;
  SchemeConfig s = scheme_config(cfg, c, g);
  s.workers = workers;
  return Solver(initial_field(c, g), GasModel(c.gamma), c.bc, c.source, s, c.t_start);
}

// Periodic density wave advected at unit speed; four-point Gauss averages.
Field density_wave(const Grid& g, double t, const GasModel& gas) {
  Field f(g);
  const double x[] = {-0.4305681557970263, -0.1699905217924281, 0.1699905217924281,
                      0.4305681557970263};
  const double w[] = {0.1739274225837017, 0.3260725774162983, 0.3260725774162983,
                      0.1739274225837017};
  for (int i = 0; i < g.nx; ++i) {
    double rho = 0.0;
    for (int q = 0; q < 4; ++q)
      rho += w[q] * (1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * (g.xc(i) + x[q] * g.dx - t)));
    f.set(i, 0, {rho, rho, 0.0, 1.0 / (gas.gamma - 1.0) + 0.5 * rho});
  }
  return f;
}

}  // namespace

TEST(Boundary, GhostFilling) {
  GasModel gas(1.4);
  Grid g = Grid::make(6, 5, 0.0, 1.0, 0.0, 1.0);
  Field f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f.set(i, j, {1.0 + i + 10 * j, 0.1 * i, 0.2 * j, 50.0});
  BoundaryCondition bc;
  bc.left.kind = bc.right.kind = BoundaryKind::periodic;
  bc.bottom.kind = BoundaryKind::reflective;
  bc.top.kind = BoundaryKind::outflow;
  fill_ghosts(f, bc, gas);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(f.get(-k, 2), f.get(g.nx - k, 2));
    EXPECT_EQ(f.get(g.nx - 1 + k, 2), f.get(k - 1, 2));
    Vec4 in = f.get(3, k - 1), gh = f.get(3, -k);
    EXPECT_EQ(gh[0], in[0]);
    EXPECT_EQ(gh[1], in[1]);
    EXPECT_EQ(gh[2], -in[2]);
    EXPECT_EQ(gh[3], in[3]);
    EXPECT_EQ(f.get(3, g.ny - 1 + k), f.get(3, g.ny - 1));
  }
  BoundaryCondition bad;
  bad.left.kind = BoundaryKind::periodic;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Boundary, FixedStateGhosts) {
  GasModel gas(1.4);
  Grid g = Grid::make(5, 1, 0.0, 1.0, 0.0, 1.0);
  Field f(g);
  for (int i = 0; i < g.nx; ++i) f.set(i, 0, {1.0, 0.0, 0.0, 2.5});
  BoundaryCondition bc = BoundaryCondition::all(BoundaryKind::outflow);
  bc.left.kind = BoundaryKind::fixed;
  bc.left.state = {2.0, 1.0, 0.0, 3.0};
  fill_ghosts(f, bc, gas);
  Vec4 want = to_conserved(bc.left.state, gas).vec();
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(f.get(-k, 0), want);
}

TEST(StableDt, AcousticLimit) {
  GasModel gas(1.4);
  Grid g = Grid::make(10, 20, 0.0, 1.0, 0.0, 1.0);
  Field f(g);
  PrimitiveState q{1.0, 2.0, 0.5, 1.0};
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f.set(i, j, to_conserved(q, gas).vec());
  double c = std::sqrt(1.4);
  EXPECT_NEAR(stable_dt(f, gas, 0.4), 0.4 * std::min(0.1 / (2.0 + c), 0.05 / (0.5 + c)), 1e-15);
  f.set(3, 4, {1.0, 3.0, 0.0, 1.0});
  EXPECT_THROW(stable_dt(f, gas, 0.4), AdmissibilityError);
}

TEST(SourceTerms, GravityAndItsTimeDerivative) {
  SourceModel src{SourceKind::gravity, 2.0};
  SourceTerms s = source_terms({1.5, 0.2, -0.3, 4.0}, {0.1, 0.2, 0.7, 0.4}, src);
  EXPECT_EQ(s.s, (Vec4{0.0, 0.0, 3.0, -0.6}));
  EXPECT_EQ(s.st, (Vec4{0.0, 0.0, 0.2, 1.4}));
  SourceTerms none = source_terms({1.5, 0.2, -0.3, 4.0}, {0.1, 0.2, 0.7, 0.4}, {});
  EXPECT_EQ(none.s, Vec4{});
}

TEST(TimeStep, TwoStageCoefficients) {
  // For w' = a w the scheme reproduces exp(a dt) through dt^4.
  const double a = -0.7, dt = 0.1, w = 1.0;
  double ws = s2o4_stage(w, a * w, a * a * w, dt);
  double wn = s2o4_final(w, a * w, a * a * w, a * a * ws, dt);
  double taylor = 1.0 + a * dt + std::pow(a * dt, 2) / 2 + std::pow(a * dt, 3) / 6 +
                  std::pow(a * dt, 4) / 24;
  EXPECT_NEAR(wn, taylor, 1e-15);
}

TEST(Solver, UniformStateIsPreserved) {
  CaseSpec c = make_case("shock-tube:rr=1,pr=1");
  Grid g = c.grid(50, 1);
  Solver s = make_solver(c, g);
  for (int k = 0; k < 20; ++k) s.step(s.stable_dt());
  for (int i = 0; i < g.nx; ++i) {
    Vec4 w = s.field().get(i, 0);
    EXPECT_NEAR(w[0], 1.0, 1e-14);
    EXPECT_NEAR(w[1], 0.0, 1e-14);
    EXPECT_NEAR(w[3], 2.5, 1e-14);
  }
}

TEST(Solver, SodConvergesToTheExactSolution) {
  CaseSpec c = make_case("shock-tube");
  std::vector<double> err;
  for (int n : {100, 200, 400}) {
    Grid g = c.grid(n, 1);
    Solver s = make_solver(c, g);
    s.advance_to(c.t_end);
    EXPECT_DOUBLE_EQ(s.time(), 0.2);
    err.push_back(density_l1_error(s.field(), oracle_averages(c, g, c.t_end)).relative_l1);
    EXPECT_EQ(s.stats().redone_steps, 0);
  }
  EXPECT_LT(err[1], 6e-3);
  EXPECT_LT(err[1], err[0]);
  EXPECT_LT(err[2], err[1]);
}

TEST(Solver, BoundaryOutflowIsAccounted) {
  // Waves stay inside, but the pressure on the end faces changes momentum.
  CaseSpec c = make_case("shock-tube");
  Grid g = c.grid(100, 1);
  Solver s = make_solver(c, g);
  Totals t0 = field_totals(s.field());
  s.advance_to(0.1);
  ConservationDrift d = conservation_drift(t0, s.field(), s.stats().boundary_outflow);
  EXPECT_LT(d.max_relative(), 1e-13);
  EXPECT_NEAR(s.stats().boundary_outflow[1], 0.1 * (0.1 - 1.0), 1e-13);
}

TEST(Solver, SmoothAdvectionIsHighOrder) {
  GasModel gas(1.4);
  BoundaryCondition bc = BoundaryCondition::all(BoundaryKind::periodic);
  std::vector<double> err;
  for (int n : {20, 40, 80}) {
    Grid g = Grid::make(n, 1, 0.0, 1.0, 0.0, 1.0);
    SchemeConfig cfg;
    cfg.cfl = 0.3;
    cfg.recon.weno.lambda = std::pow(g.dx, 0.75);
    Solver s(density_wave(g, 0.0, gas), gas, bc, {}, cfg);
    s.advance_to(1.0);
    err.push_back(density_l1_error(s.field(), density_wave(g, 1.0, gas)).mean_abs);
  }
  EXPECT_GT(std::log2(err[1] / err[2]), 4.0) << err[0] << " " << err[1] << " " << err[2];
}

TEST(Solver, HurricaneKeepsRotationSymmetry) {
  CaseSpec c = make_case("hurricane-low");
  Grid g = c.grid(20, 20);
  Solver s = make_solver(c, g);
  EXPECT_EQ(rotation_symmetry_error(s.field()), 0.0);
  for (int k = 0; k < 10; ++k) s.step(s.stable_dt());
  EXPECT_LT(rotation_symmetry_error(s.field()), 1e-11);
}

TEST(Solver, FourShocksKeepsDiagonalSymmetry) {
  CaseSpec c = make_case("four-shocks");
  Grid g = c.grid(24, 24);
  Solver s = make_solver(c, g);
  for (int k = 0; k < 10; ++k) s.step(s.stable_dt());
  EXPECT_LT(diagonal_symmetry_error(s.field()), 1e-11);
}

TEST(Solver, ResultsDoNotDependOnTheWorkerCount) {
  CaseSpec c = make_case("four-shocks");
  Grid g = c.grid(24, 24);
  Solver a = make_solver(c, g, 1), b = make_solver(c, g, 3);
  for (int k = 0; k < 5; ++k) {
    double dt = a.stable_dt();
    a.step(dt);
    b.step(dt);
  }
  for (int m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < g.size(); ++n)
      ASSERT_EQ(a.field().comp(m)[n], b.field().comp(m)[n]);
  EXPECT_EQ(a.stats().fallbacks, b.stats().fallbacks);
}

TEST(Solver, InadmissibleStagesAreRecomputedAtFirstOrder) {
  CaseSpec c = make_case("hurricane-critical");
  Grid g = c.grid(40, 40);
  Solver s = make_solver(c, g);
  s.set_track_fallback_cells(true);
  s.advance_to(0.02);
  EXPECT_GT(s.stats().redone_steps, 0);
  EXPECT_GT(s.stats().fallbacks, 0);
  EXPECT_GE(min_density(s.field()), 0.0);
}

TEST(Solver, StepFailureLeavesTheStateUntouched) {
  CaseSpec c = make_case("shock-tube");
  Grid g = c.grid(40, 1);
  Solver s = make_solver(c, g);
  Field before = s.field();
  EXPECT_THROW(s.step(10.0), StepFailure);
  for (int m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < g.size(); ++n) ASSERT_EQ(s.field().comp(m)[n], before.comp(m)[n]);
  EXPECT_EQ(s.time(), 0.0);
}
