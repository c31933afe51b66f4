// Gas-kinetic BGK interface flux.  All quantities are in the interface
// normal frame: u is the normal particle velocity, v the tangential one, and
// conserved vectors are (rho, rho*U_n, rho*U_t, rho*E).
#pragma once

#include <array>

#include "ebench/state.hpp"

namespace ebench {

struct MaxwellianState {
  double rho = 1.0;
  double lam = 0.5;  // rho / (2p)
  double u = 0.0, v = 0.0;
  double k_internal = 2.0;
};

MaxwellianState maxwellian_from_conserved(const ConservedState& w, const GasModel& gas);
MaxwellianState maxwellian_from_conserved(const Vec4& w, double k_internal);
Vec4 maxwellian_conserved(const MaxwellianState& m);

// Normalized moments <u^n>, <v^m>, <xi^2k> of a Maxwellian.
struct MomentTable {
  static constexpr int kN = 7;
  std::array<double, kN> u{};     // full
  std::array<double, kN> uplus{}; // u > 0
  std::array<double, kN> uminus{};// u < 0
  std::array<double, kN> v{};
  double xi2 = 0.0, xi4 = 0.0;
};

MomentTable moment_table(const MaxwellianState& m);

enum class Half { full, plus, minus };

// <u^n v^m psi> with psi = (1, u, v, (u^2+v^2+xi^2)/2), normalized by rho.
Vec4 psi_moment(const MomentTable& t, Half h, int n, int m);

// Coefficients of a = c1 + c2 u + c3 v + c4 (u^2+v^2+xi^2)/2.
using MicroSlope = Vec4;

// <a u^n v^m psi>, normalized by rho.
Vec4 slope_moment(const MicroSlope& a, const MomentTable& t, Half h, int n, int m);

// Solves <a psi> g = dW for the expansion coefficients.
MicroSlope micro_slope(const Vec4& dw, const MaxwellianState& m);

// Time coefficient A from <(a1 u + a2 v + A) psi> g = 0.
MicroSlope time_slope(const MicroSlope& a1, const MicroSlope& a2, const MaxwellianState& m,
                      const MomentTable& t);

struct InterfaceEquilibrium {
  Vec4 w0;
  MaxwellianState g0;
};

// W0 = int_{u>0} psi g_l + int_{u<0} psi g_r.
InterfaceEquilibrium interface_state(const MaxwellianState& gl, const MaxwellianState& gr);
InterfaceEquilibrium interface_state(const MaxwellianState& gl, const MomentTable& tl,
                                     const MaxwellianState& gr, const MomentTable& tr);

struct CollisionTimeModel {
  double eps_base = 0.05;
  double c_jump = 1.0;
};

double collision_time(double pl, double pr, double dt, const CollisionTimeModel& model);

// Which relaxation time multiplies the non-exponential terms of the
// integral solution.  `euler` sets it to zero (inviscid limit);
// `single_tau` uses the collision time there as well, which adds a physical
// viscosity proportional to tau*p.
enum class RelaxationForm { euler, single_tau };

// Everything the flux needs at one interface point, normal frame.  Slopes
// are spatial derivatives (per unit length) of the conserved variables.
struct InterfaceReconstruction {
  Vec4 wl, wr;
  Vec4 dl_n, dr_n;  // normal slopes of the left and right reconstructions
  Vec4 dl_t, dr_t;  // tangential slopes
  Vec4 d0_n, d0_t;  // slopes of the interface equilibrium
};

// Precomputed moment combinations; the time-integrated flux over any horizon
// is a linear combination of these with scalar time weights.
struct FluxKernel {
  Vec4 eq, eq_a, eq_A;        // g0 part, its a-slope part, its A part
  Vec4 init, init_a, init_A;  // g_l/g_r part, slope part, A part
  Vec4 w0;
  double pl = 0.0, pr = 0.0;
};

FluxKernel flux_kernel(const InterfaceReconstruction& r, double k_internal);

// Integrals over [0, delta] of the time functions multiplying each part.
struct TimeWeights {
  double eq, eq_a, eq_A, init, init_a, init_A;
};
TimeWeights time_weights(double delta, double tau, double tau_ce);

Vec4 integrate(const FluxKernel& k, const TimeWeights& w);

// Time-integrated flux over [0, delta].
Vec4 time_integrated_flux(const InterfaceReconstruction& r, double tau, double delta,
                          double k_internal, RelaxationForm form = RelaxationForm::euler);

struct InterfaceFluxExpansion {
  Vec4 f0, ft;
  Vec4 int_full, int_half;
};

// Solves F*dt + dF*dt^2/2 = I(dt), F*dt/2 + dF*dt^2/8 = I(dt/2).
InterfaceFluxExpansion flux_expansion(const Vec4& int_half, const Vec4& int_full, double dt);

// Full per-interface evaluation over horizon `horizon`; tau is computed from
// the reconstructed pressures and the step size `dt_step`.
InterfaceFluxExpansion kinetic_flux(const InterfaceReconstruction& r, double dt_step,
                                    double horizon, double k_internal,
                                    const CollisionTimeModel& model, RelaxationForm form);

// Analytic Euler flux in the normal direction.
Vec4 euler_flux(const Vec4& w, double gamma);

}  // namespace ebench
