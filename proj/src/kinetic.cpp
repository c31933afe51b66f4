#include "ebench/kinetic.hpp"

#include <cmath>
#include <numbers>

namespace ebench {

MaxwellianState maxwellian_from_conserved(const Vec4& w, double k) {
  if (!(w[0] > 0.0)) throw AdmissibilityError("non-positive density in Maxwellian");
  double u = w[1] / w[0], v = w[2] / w[0];
  double eint = w[3] - 0.5 * (w[1] * u + w[2] * v);
  if (!(eint > 0.0)) throw AdmissibilityError("non-positive internal energy in Maxwellian");
  MaxwellianState m;
  m.rho = w[0];
  m.u = u;
  m.v = v;
  m.k_internal = k;
  m.lam = (k + 2.0) * w[0] / (4.0 * eint);
  return m;
}

MaxwellianState maxwellian_from_conserved(const ConservedState& w, const GasModel& gas) {
  return maxwellian_from_conserved(w.vec(), gas.k_internal());
}

Vec4 maxwellian_conserved(const MaxwellianState& m) {
  double e = 0.5 * m.rho * (m.u * m.u + m.v * m.v + (m.k_internal + 2.0) / (2.0 * m.lam));
  return {m.rho, m.rho * m.u, m.rho * m.v, e};
}

MomentTable moment_table(const MaxwellianState& m) {
  MomentTable t;
  const double lam = m.lam, U = m.u, V = m.v;
  const double h = 0.5 / lam;
  const double sl = std::sqrt(lam);
  const double b = 0.5 * std::exp(-lam * U * U) / std::sqrt(std::numbers::pi * lam);
  t.u[0] = 1.0;
  t.u[1] = U;
  t.v[0] = 1.0;
  t.v[1] = V;
  t.uplus[0] = 0.5 * std::erfc(-sl * U);
  t.uplus[1] = U * t.uplus[0] + b;
  t.uminus[0] = 0.5 * std::erfc(sl * U);
  t.uminus[1] = U * t.uminus[0] - b;
  for (int n = 2; n < MomentTable::kN; ++n) {
    double c = (n - 1) * h;
    t.u[n] = U * t.u[n - 1] + c * t.u[n - 2];
    t.v[n] = V * t.v[n - 1] + c * t.v[n - 2];
    t.uplus[n] = U * t.uplus[n - 1] + c * t.uplus[n - 2];
    t.uminus[n] = U * t.uminus[n - 1] + c * t.uminus[n - 2];
  }
  const double k = m.k_internal;
  t.xi2 = k * h;
  t.xi4 = (k * k + 2.0 * k) * h * h;
  return t;
}

namespace {

inline const std::array<double, MomentTable::kN>& utab(const MomentTable& t, Half h) {
  return h == Half::full ? t.u : (h == Half::plus ? t.uplus : t.uminus);
}

// <u^n v^m xi^(2k) psi> for k = 0 or 1.
inline Vec4 psi_xi(const std::array<double, MomentTable::kN>& u, const MomentTable& t, int n,
                   int m, int k) {
  const double x0 = k == 0 ? 1.0 : t.xi2;
  const double x1 = k == 0 ? t.xi2 : t.xi4;
  const auto& v = t.v;
  return {u[n] * v[m] * x0, u[n + 1] * v[m] * x0, u[n] * v[m + 1] * x0,
          0.5 * (u[n + 2] * v[m] * x0 + u[n] * v[m + 2] * x0 + u[n] * v[m] * x1)};
}

inline Vec4 axpy4(double a, const Vec4& x, const Vec4& y) {
  return {y[0] + a * x[0], y[1] + a * x[1], y[2] + a * x[2], y[3] + a * x[3]};
}

inline Vec4 add4(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Vec4 scale4(double s, const Vec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

MicroSlope solve_slope(const Vec4& d, const MaxwellianState& m) {
  const double U = m.u, V = m.v, lam = m.lam, k = m.k_internal;
  const double q = U * U + V * V + (k + 2.0) / (2.0 * lam);
  const double r4 = d[3] - 0.5 * q * d[0];
  const double r3 = d[2] - V * d[0];
  const double r2 = d[1] - U * d[0];
  MicroSlope a;
  a[3] = 8.0 * lam * lam / (k + 2.0) * (r4 - U * r2 - V * r3);
  a[2] = 2.0 * lam * r3 - V * a[3];
  a[1] = 2.0 * lam * r2 - U * a[3];
  a[0] = d[0] - U * a[1] - V * a[2] - 0.5 * a[3] * q;
  return a;
}

}  // namespace

Vec4 psi_moment(const MomentTable& t, Half h, int n, int m) { return psi_xi(utab(t, h), t, n, m, 0); }

Vec4 slope_moment(const MicroSlope& a, const MomentTable& t, Half h, int n, int m) {
  const auto& u = utab(t, h);
  Vec4 e2 = add4(add4(psi_xi(u, t, n + 2, m, 0), psi_xi(u, t, n, m + 2, 0)), psi_xi(u, t, n, m, 1));
  Vec4 r = scale4(a[0], psi_xi(u, t, n, m, 0));
  r = axpy4(a[1], psi_xi(u, t, n + 1, m, 0), r);
  r = axpy4(a[2], psi_xi(u, t, n, m + 1, 0), r);
  return axpy4(0.5 * a[3], e2, r);
}

MicroSlope micro_slope(const Vec4& dw, const MaxwellianState& m) {
  return solve_slope(scale4(1.0 / m.rho, dw), m);
}

MicroSlope time_slope(const MicroSlope& a1, const MicroSlope& a2, const MaxwellianState& m,
                      const MomentTable& t) {
  Vec4 s = add4(slope_moment(a1, t, Half::full, 1, 0), slope_moment(a2, t, Half::full, 0, 1));
  return solve_slope(scale4(-1.0, s), m);
}

InterfaceEquilibrium interface_state(const MaxwellianState& gl, const MomentTable& tl,
                                     const MaxwellianState& gr, const MomentTable& tr) {
  InterfaceEquilibrium out;
  out.w0 = add4(scale4(gl.rho, psi_moment(tl, Half::plus, 0, 0)),
                scale4(gr.rho, psi_moment(tr, Half::minus, 0, 0)));
  out.g0 = maxwellian_from_conserved(out.w0, gl.k_internal);
  return out;
}

InterfaceEquilibrium interface_state(const MaxwellianState& gl, const MaxwellianState& gr) {
  return interface_state(gl, moment_table(gl), gr, moment_table(gr));
}

double collision_time(double pl, double pr, double dt, const CollisionTimeModel& model) {
  return model.eps_base * dt + model.c_jump * std::fabs(pl - pr) / (pl + pr) * dt;
}

FluxKernel flux_kernel(const InterfaceReconstruction& r, double k) {
  FluxKernel out;
  MaxwellianState gl = maxwellian_from_conserved(r.wl, k);
  MaxwellianState gr = maxwellian_from_conserved(r.wr, k);
  MomentTable tl = moment_table(gl), tr = moment_table(gr);
  InterfaceEquilibrium eq = interface_state(gl, tl, gr, tr);
  MomentTable t0 = moment_table(eq.g0);
  out.w0 = eq.w0;
  out.pl = gl.rho / (2.0 * gl.lam);
  out.pr = gr.rho / (2.0 * gr.lam);

  MicroSlope a1l = micro_slope(r.dl_n, gl), a2l = micro_slope(r.dl_t, gl);
  MicroSlope a1r = micro_slope(r.dr_n, gr), a2r = micro_slope(r.dr_t, gr);
  MicroSlope al = time_slope(a1l, a2l, gl, tl), ar = time_slope(a1r, a2r, gr, tr);
  MicroSlope a10 = micro_slope(r.d0_n, eq.g0), a20 = micro_slope(r.d0_t, eq.g0);
  MicroSlope a0 = time_slope(a10, a20, eq.g0, t0);
  const double r0 = eq.g0.rho;

  out.eq = scale4(r0, psi_moment(t0, Half::full, 1, 0));
  out.eq_a = scale4(r0, add4(slope_moment(a10, t0, Half::full, 2, 0),
                             slope_moment(a20, t0, Half::full, 1, 1)));
  out.eq_A = scale4(r0, slope_moment(a0, t0, Half::full, 1, 0));

  out.init = add4(scale4(gl.rho, psi_moment(tl, Half::plus, 1, 0)),
                  scale4(gr.rho, psi_moment(tr, Half::minus, 1, 0)));
  Vec4 sl = add4(slope_moment(a1l, tl, Half::plus, 2, 0), slope_moment(a2l, tl, Half::plus, 1, 1));
  Vec4 sr = add4(slope_moment(a1r, tr, Half::minus, 2, 0), slope_moment(a2r, tr, Half::minus, 1, 1));
  out.init_a = add4(scale4(gl.rho, sl), scale4(gr.rho, sr));
  out.init_A = add4(scale4(gl.rho, slope_moment(al, tl, Half::plus, 1, 0)),
                    scale4(gr.rho, slope_moment(ar, tr, Half::minus, 1, 0)));
  return out;
}

TimeWeights time_weights(double delta, double tau, double tau_ce) {
  const double om = -std::expm1(-delta / tau);  // 1 - exp(-delta/tau)
  const double eta = 1.0 - om;
  const double te = tau * tau * om - tau * delta * eta;  // int t e^{-t/tau}
  TimeWeights w;
  w.eq = delta - tau * om;
  w.eq_a = te + tau_ce * tau * om - tau_ce * delta;
  w.eq_A = 0.5 * delta * delta - tau_ce * delta + tau_ce * tau * om;
  w.init = tau * om;
  w.init_a = -(tau_ce * tau * om + te);
  w.init_A = -tau_ce * tau * om;
  return w;
}

Vec4 integrate(const FluxKernel& k, const TimeWeights& w) {
  Vec4 f;
  for (int m = 0; m < 4; ++m)
    f[m] = (w.eq * k.eq[m] + w.eq_a * k.eq_a[m] + w.eq_A * k.eq_A[m]) +
           (w.init * k.init[m] + w.init_a * k.init_a[m] + w.init_A * k.init_A[m]);
  return f;
}

Vec4 time_integrated_flux(const InterfaceReconstruction& r, double tau, double delta, double k,
                          RelaxationForm form) {
  FluxKernel fk = flux_kernel(r, k);
  return integrate(fk, time_weights(delta, tau, form == RelaxationForm::single_tau ? tau : 0.0));
}

InterfaceFluxExpansion flux_expansion(const Vec4& int_half, const Vec4& int_full, double dt) {
  InterfaceFluxExpansion e;
  e.int_full = int_full;
  e.int_half = int_half;
  for (int m = 0; m < 4; ++m) {
    e.f0[m] = (4.0 * int_half[m] - int_full[m]) / dt;
    e.ft[m] = 4.0 * (int_full[m] - 2.0 * int_half[m]) / (dt * dt);
  }
  return e;
}

InterfaceFluxExpansion kinetic_flux(const InterfaceReconstruction& r, double dt_step,
                                    double horizon, double k, const CollisionTimeModel& model,
                                    RelaxationForm form) {
  FluxKernel fk = flux_kernel(r, k);
  double tau = collision_time(fk.pl, fk.pr, dt_step, model);
  double tc = form == RelaxationForm::single_tau ? tau : 0.0;
  Vec4 full = integrate(fk, time_weights(horizon, tau, tc));
  Vec4 half = integrate(fk, time_weights(0.5 * horizon, tau, tc));
  return flux_expansion(half, full, horizon);
}

Vec4 euler_flux(const Vec4& w, double gamma) {
  double u = w[1] / w[0];
  double p = pressure(w, gamma);
  return {w[1], w[1] * u + p, w[2] * u, (w[3] + p) * u};
}

}  // namespace ebench
