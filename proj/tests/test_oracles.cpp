#include <gtest/gtest.h>

#include <cmath>

#include "ebench/cases.hpp"
#include "ebench/oracles.hpp"
#include "support/bisection_riemann.hpp"

using namespace ebench;

namespace {

struct Toro {
  PrimitiveState l, r;
};

// The five standard tests of Toro's book, gamma = 1.4.
const Toro kToro[] = {
    {{1.0, 0.0, 0.0, 1.0}, {0.125, 0.0, 0.0, 0.1}},
    {{1.0, -2.0, 0.0, 0.4}, {1.0, 2.0, 0.0, 0.4}},
    {{1.0, 0.0, 0.0, 1000.0}, {1.0, 0.0, 0.0, 0.01}},
    {{1.0, 0.0, 0.0, 0.01}, {1.0, 0.0, 0.0, 100.0}},
    {{5.99924, 19.5975, 0.0, 460.894}, {5.99242, -6.19633, 0.0, 46.0950}},
};

oracle::Side side(const PrimitiveState& q) { return {q.rho, q.u, q.p}; }

}  // namespace

TEST(ExactRiemann, AgreesWithBisection) {
  for (const auto& t : kToro) {
    RiemannSolution1D s = exact_riemann(t.l, t.r, 1.4);
    oracle::Star b = oracle::solve(side(t.l), side(t.r), 1.4);
    EXPECT_NEAR(s.p_star, b.p, 1e-10 * b.p);
    EXPECT_NEAR(s.u_star, b.u, 1e-10 * (1.0 + std::fabs(b.u)));
    EXPECT_NEAR(s.rho_star_l, b.rho_l, 1e-10 * b.rho_l);
    EXPECT_NEAR(s.rho_star_r, b.rho_r, 1e-10 * b.rho_r);
    EXPECT_FALSE(s.vacuum);
  }
}

TEST(ExactRiemann, SodStarState) {
  RiemannSolution1D s = exact_riemann(kToro[0].l, kToro[0].r, 1.4);
  EXPECT_NEAR(s.p_star, 0.30313, 5e-6);
  EXPECT_NEAR(s.u_star, 0.92745, 5e-6);
  EXPECT_EQ(s.left_wave, WaveKind::rarefaction);
  EXPECT_EQ(s.right_wave, WaveKind::shock);
  // Sampled states left and right of the contact.
  EXPECT_NEAR(s.sample(s.contact() - 1e-9).rho, s.rho_star_l, 1e-12);
  EXPECT_NEAR(s.sample(s.contact() + 1e-9).rho, s.rho_star_r, 1e-12);
  EXPECT_EQ(s.sample(-10.0).rho, 1.0);
  EXPECT_EQ(s.sample(10.0).rho, 0.125);
  oracle::Star b = oracle::solve(side(kToro[0].l), side(kToro[0].r), 1.4);
  EXPECT_NEAR(s.right_head(), oracle::right_shock_speed(b, side(kToro[0].r), 1.4), 1e-10);
}

TEST(ExactRiemann, RarefactionFanIsContinuous) {
  RiemannSolution1D s = exact_riemann(kToro[0].l, kToro[0].r, 1.4);
  PrimitiveState a = s.sample(s.left_head() + 1e-10), b = s.sample(s.left_tail() - 1e-10);
  EXPECT_NEAR(a.rho, 1.0, 1e-8);
  EXPECT_NEAR(b.rho, s.rho_star_l, 1e-8);
  EXPECT_NEAR(b.p, s.p_star, 1e-8);
}

TEST(ExactRiemann, PressureFunctionVanishesAtTheStar) {
  for (const auto& t : kToro) {
    RiemannSolution1D s = exact_riemann(t.l, t.r, 1.4);
    EXPECT_NEAR(riemann_pressure_function(s.p_star, t.l, t.r, 1.4), 0.0, 1e-10);
  }
}

TEST(ExactRiemann, VacuumGeneration) {
  RiemannSolution1D s = exact_riemann({1.0, -20.0, 0.0, 0.4}, {1.0, 20.0, 0.0, 0.4}, 1.4);
  EXPECT_TRUE(s.vacuum);
  EXPECT_EQ(s.sample(0.0).rho, 0.0);
}

TEST(Hurricane, CriticalParameters) {
  HurricaneParams h = hurricane_params("critical");
  EXPECT_DOUBLE_EQ(h.A, 25.0);
  EXPECT_DOUBLE_EQ(h.v0, 10.0);
  EXPECT_DOUBLE_EQ(h.gamma, 2.0);
  EXPECT_TRUE(h.critical());
  EXPECT_NEAR(h.v0 / h.c0(), std::sqrt(2.0), 1e-14);
  EXPECT_GT(hurricane_params("high").v0 / hurricane_params("high").c0(), std::sqrt(2.0));
  EXPECT_LT(hurricane_params("low").v0 / hurricane_params("low").c0(), std::sqrt(2.0));
  EXPECT_THROW(hurricane_exact(hurricane_params("high"), 0.1, 0.1, 0.1), std::invalid_argument);
}

TEST(Hurricane, InitialCondition) {
  HurricaneParams h = hurricane_params("critical");
  PrimitiveState q = hurricane_initial(h, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(q.rho, 1.0);
  EXPECT_NEAR(q.u, 0.0, 1e-15);
  EXPECT_NEAR(q.v, -10.0, 1e-14);
  EXPECT_DOUBLE_EQ(q.p, 25.0);
  q = hurricane_initial(h, 0.0, 0.5);
  EXPECT_NEAR(q.u, 10.0, 1e-14);
}

TEST(Hurricane, VacuumAtTheOriginAndMatchingRadius) {
  HurricaneParams h = hurricane_params("critical");
  const double t = 0.1;
  EXPECT_EQ(hurricane_exact(h, 0.0, 0.0, t).rho, 0.0);
  const double R = hurricane_match_radius(h, t);
  EXPECT_NEAR(R, 2.0 * t * std::sqrt(50.0), 1e-14);
  PrimitiveState in = hurricane_exact(h, R * (1.0 - 1e-12), 0.0, t);
  PrimitiveState out = hurricane_exact(h, R, 0.0, t);
  EXPECT_NEAR(in.rho, out.rho, 1e-10);
  EXPECT_NEAR(in.u, out.u, 1e-9);
  EXPECT_NEAR(in.v, out.v, 1e-9);
}

TEST(Hurricane, NearFieldCurl) {
  HurricaneParams h = hurricane_params("critical");
  const double t = 0.2, e = 1e-4, x = 0.3, y = -0.2;
  auto U = [&](double a, double b) { return hurricane_exact(h, a, b, t).u; };
  auto V = [&](double a, double b) { return hurricane_exact(h, a, b, t).v; };
  double curl = (V(x + e, y) - V(x - e, y)) / (2 * e) - (U(x, y + e) - U(x, y - e)) / (2 * e);
  EXPECT_NEAR(curl, -1.0 / t, 1e-8);
}

TEST(Hurricane, ExactSolutionSatisfiesTheEulerEquations) {
  // Fourth-order central differences of W_t + F_x + G_y in both fields.
  HurricaneParams h = hurricane_params("critical");
  auto cons = [&](double x, double y, double t) {
    PrimitiveState q = hurricane_exact(h, x, y, t);
    double E = q.p / (h.gamma - 1.0) + 0.5 * q.rho * (q.u * q.u + q.v * q.v);
    struct R {
      Vec4 w, f, g;
    } r;
    r.w = {q.rho, q.rho * q.u, q.rho * q.v, E};
    r.f = {q.rho * q.u, q.rho * q.u * q.u + q.p, q.rho * q.u * q.v, (E + q.p) * q.u};
    r.g = {q.rho * q.v, q.rho * q.u * q.v, q.rho * q.v * q.v + q.p, (E + q.p) * q.v};
    return r;
  };
  auto d4 = [](auto f, double e) { return (f(-2 * e) - 8 * f(-e) + 8 * f(e) - f(2 * e)) / (12 * e); };
  auto residual = [&](double x, double y, double t, double e) {
    double worst = 0.0;
    for (int m = 0; m < 4; ++m) {
      double r = d4([&](double s) { return cons(x, y, t + s).w[m]; }, e) +
                 d4([&](double s) { return cons(x + s, y, t).f[m]; }, e) +
                 d4([&](double s) { return cons(x, y + s, t).g[m]; }, e);
      worst = std::max(worst, std::fabs(r));
    }
    return worst;
  };
  const double t = 0.1;  // matching radius 1.414
  for (auto [x, y] : {std::pair{0.3, 0.2}, std::pair{-0.5, 0.7}, std::pair{1.5, 0.9},
                      std::pair{-1.2, -1.1}}) {
    double r1 = residual(x, y, t, 1e-3), r2 = residual(x, y, t, 5e-4);
    // Truncation error of the stencil only: small and falling by 2^4.
    EXPECT_LT(r2, 1e-4) << x << "," << y;
    if (r1 > 1e-9) EXPECT_GT(r1 / r2, 12.0) << x << "," << y;
  }
}

TEST(Pressureless, DataOrdering) {
  auto same = vortex_sheet_corners(SheetSign::same);
  auto opp = vortex_sheet_corners(SheetSign::opposite);
  EXPECT_TRUE(pressureless_data_valid(SheetSign::same, same));
  EXPECT_TRUE(pressureless_data_valid(SheetSign::opposite, opp));
  std::string why;
  EXPECT_FALSE(pressureless_data_valid(SheetSign::same, opp, &why));
  EXPECT_FALSE(why.empty());
  EXPECT_THROW(PressurelessReference(SheetSign::opposite, same), std::invalid_argument);
}

TEST(Pressureless, SameSignOpensAVacuumRectangle) {
  PressurelessReference ref(SheetSign::same, vortex_sheet_corners(SheetSign::same));
  EXPECT_EQ(ref.sample_similarity(0.0, 0.0).region, PlessRegion::vacuum);
  EXPECT_EQ(ref.sample_similarity(0.7, 0.45).region, PlessRegion::vacuum);
  PlessSample q1 = ref.sample_similarity(2.0, 2.0);
  EXPECT_EQ(q1.region, PlessRegion::quadrant);
  EXPECT_EQ(q1.quadrant, 1);
  EXPECT_EQ(q1.rho, 1.0);
  EXPECT_EQ(ref.sample_similarity(-2.0, 2.0).quadrant, 2);
  EXPECT_EQ(ref.sample_similarity(-2.0, -2.0).quadrant, 3);
  PlessSample q4 = ref.sample_similarity(2.0, -2.0);
  EXPECT_EQ(q4.quadrant, 4);
  EXPECT_EQ(q4.rho, 3.0);
  // Similarity scaling about the corner.
  PressurelessReference shifted(SheetSign::same, vortex_sheet_corners(SheetSign::same), 0.5, 0.5);
  EXPECT_EQ(shifted.sample(0.5, 0.5, 0.2).region, PlessRegion::vacuum);
  EXPECT_EQ(shifted.sample(0.5 + 0.2 * 2.0, 0.5 - 0.2 * 2.0, 0.2).quadrant, 4);
  EXPECT_EQ(ref.sample_similarity(0.75, 0.0).region, PlessRegion::boundary);
}

TEST(Pressureless, OppositeSignConcentratesMass) {
  std::array<CornerState, 4> q = vortex_sheet_corners(SheetSign::opposite);
  q[0].rho = 4.0;
  q[2].rho = 9.0;
  PressurelessReference ref(SheetSign::opposite, q);
  PlessSample s = ref.sample_similarity(0.0, 0.0);
  EXPECT_EQ(s.region, PlessRegion::delta_support);
  EXPECT_DOUBLE_EQ(s.delta_strength, 6.0);
  EXPECT_EQ(ref.sample_similarity(-2.0, 2.0).quadrant, 2);
  auto v = ref.vertices();
  EXPECT_EQ(v[2][0], 0.75);
  EXPECT_EQ(v[2][1], 0.5);
}
