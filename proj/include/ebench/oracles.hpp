// Reference solutions: exact 1D Riemann solver, the critical hurricane-like
// solution and the pressureless-limit geometry of vortex-sheet problems.
#pragma once

#include <array>
#include <string>

#include "ebench/state.hpp"

namespace ebench {

enum class WaveKind { rarefaction, shock };

// Exact solution of the 1D Riemann problem for (rho, u, p); v is advected
// passively with the contact.
struct RiemannSolution1D {
  PrimitiveState left, right;
  double gamma = 1.4;
  double p_star = 0.0, u_star = 0.0;
  double rho_star_l = 0.0, rho_star_r = 0.0;
  WaveKind left_wave = WaveKind::rarefaction, right_wave = WaveKind::rarefaction;
  bool vacuum = false;
  int iterations = 0;

  // State at similarity coordinate xi = x/t.
  PrimitiveState sample(double xi) const;
  // Characteristic speeds of the wave fronts.
  double left_head() const;   // leftmost front of the left wave
  double left_tail() const;   // rightmost front of the left wave
  double contact() const;
  double right_tail() const;  // leftmost front of the right wave
  double right_head() const;  // rightmost front of the right wave
};

// Safeguarded Newton iteration on the pressure function.
RiemannSolution1D exact_riemann(const PrimitiveState& left, const PrimitiveState& right,
                                double gamma);

// Pressure function f(p) = f_L(p) + f_R(p) + (u_R - u_L).
double riemann_pressure_function(double p, const PrimitiveState& l, const PrimitiveState& r,
                                 double gamma);

struct HurricaneParams {
  double A = 25.0;
  double rho0 = 1.0;
  double v0 = 10.0;
  double gamma = 2.0;

  double c0() const;          // far-field sound speed
  double dp0() const;         // p'(rho0) = gamma A rho0^(gamma-1)
  bool critical() const;      // v0 = sqrt(2) c0
};

// (rho0, v0 sin(theta), -v0 cos(theta), A rho0^gamma).  At the origin the
// velocity is set to zero.
PrimitiveState hurricane_initial(const HurricaneParams& h, double x, double y);

// Exact solution for the critical rotation, t > 0.  The density vanishes at
// the origin.  Throws std::invalid_argument for non-critical parameters.
PrimitiveState hurricane_exact(const HurricaneParams& h, double x, double y, double t);

// Radius separating the near field from the far field.
double hurricane_match_radius(const HurricaneParams& h, double t);

enum class SheetSign { same, opposite };

struct CornerState {
  double rho, u, v;
};

enum class PlessRegion { quadrant, vacuum, delta_support, boundary };

struct PlessSample {
  PlessRegion region = PlessRegion::boundary;
  int quadrant = 0;  // 1..4 when region == quadrant
  double rho = 0.0, u = 0.0, v = 0.0;
  double delta_strength = 0.0;
};

// Free-streaming (pressureless) limit of a four-quadrant Riemann problem
// with a corner at (xc, yc).  Quadrants are numbered counterclockwise from
// the upper right.
class PressurelessReference {
 public:
  // Throws std::invalid_argument when the data violate the ordering for the
  // requested sign.
  PressurelessReference(SheetSign sign, const std::array<CornerState, 4>& q, double xc = 0.0,
                        double yc = 0.0);

  PlessSample sample(double x, double y, double t) const;
  PlessSample sample_similarity(double xi, double eta) const;
  // Vertices (U_k, V_k) of the vacuum or overlap rectangle.
  std::array<std::array<double, 2>, 4> vertices() const;
  SheetSign sign() const { return sign_; }

 private:
  SheetSign sign_;
  std::array<CornerState, 4> q_;
  double xc_, yc_;
};

// Checks the ordering constraints without throwing; `why` receives a reason.
bool pressureless_data_valid(SheetSign sign, const std::array<CornerState, 4>& q,
                             std::string* why = nullptr);

}  // namespace ebench
