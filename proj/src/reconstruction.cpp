#include "ebench/reconstruction.hpp"

#include <cmath>
#include <stdexcept>

namespace ebench {

namespace {

constexpr double kS3 = 1.7320508075688772;  // sqrt(3)

// Linear weights at the Gauss point x_i - (sqrt(3)/6) dx, index order as beta.
constexpr std::array<double, 3> kGaussD = {(210.0 - kS3) / 1080.0, 11.0 / 18.0,
                                           (210.0 + kS3) / 1080.0};

inline double sq(double a) { return a * a; }

Stencil5 reversed(const Stencil5& s) { return {s[4], s[3], s[2], s[1], s[0]}; }

double gauss_value_m(const Stencil5& s, const WenoConfig& cfg, double* slope) {
  auto beta = smoothness_indicators(s);
  auto w = nonlinear_weights(beta, kGaussD, cfg);
  double v0 = (1.0 + kS3 / 4.0) * s[2] - (kS3 / 3.0) * s[3] + (kS3 / 12.0) * s[4];
  double v1 = s[2] + (kS3 / 12.0) * (s[1] - s[3]);
  double v2 = -(kS3 / 12.0) * s[0] + (kS3 / 3.0) * s[1] + (1.0 - kS3 / 4.0) * s[2];
  if (slope) {
    double d0 = (-1.5 - kS3 / 6.0) * s[2] + (2.0 + kS3 / 3.0) * s[3] + (-0.5 - kS3 / 6.0) * s[4];
    double d1 = (-0.5 - kS3 / 6.0) * s[1] + (kS3 / 3.0) * s[2] + (0.5 - kS3 / 6.0) * s[3];
    double d2 = (0.5 - kS3 / 6.0) * s[0] + (-2.0 + kS3 / 3.0) * s[1] + (1.5 - kS3 / 6.0) * s[2];
    *slope = w[0] * d0 + w[1] * d1 + w[2] * d2;
  }
  return w[0] * v0 + w[1] * v1 + w[2] * v2;
}

double quartic_value_m(const Stencil5& s) {
  return (-7.0 * kS3 / 432.0 - 1.0 / 4320.0) * s[0] + (1.0 / 1080.0 + 25.0 * kS3 / 216.0) * s[1] +
         (719.0 / 720.0) * s[2] + (1.0 / 1080.0 - 25.0 * kS3 / 216.0) * s[3] +
         (-1.0 / 4320.0 + 7.0 * kS3 / 432.0) * s[4];
}

double quartic_slope_m(const Stencil5& s) {
  return (kS3 / 54.0 + 1.0 / 12.0) * s[0] + (-2.0 / 3.0 - 13.0 * kS3 / 54.0) * s[1] +
         (4.0 * kS3 / 9.0) * s[2] + (2.0 / 3.0 - 13.0 * kS3 / 54.0) * s[3] +
         (-1.0 / 12.0 + kS3 / 54.0) * s[4];
}

}  // namespace

std::array<double, 3> smoothness_indicators(const Stencil5& s) {
  const double a = s[0], b = s[1], c = s[2], d = s[3], e = s[4];
  double b0 = 13.0 / 12.0 * sq(c - 2.0 * d + e) + 0.25 * sq(3.0 * c - 4.0 * d + e);
  double b1 = 13.0 / 12.0 * sq(b - 2.0 * c + d) + 0.25 * sq(b - d);
  double b2 = 13.0 / 12.0 * sq(a - 2.0 * b + c) + 0.25 * sq(a - 4.0 * b + 3.0 * c);
  return {b0, b1, b2};
}

std::array<double, 3> nonlinear_weights(const std::array<double, 3>& beta,
                                        const std::array<double, 3>& d, const WenoConfig& cfg) {
  std::array<double, 3> a{};
  const double eps = cfg.epsilon;
  switch (cfg.variant) {
    case WenoVariant::js:
      for (int k = 0; k < 3; ++k) a[k] = d[k] / sq(eps + beta[k]);
      break;
    case WenoVariant::z: {
      double delta = std::fabs(beta[0] - beta[2]);
      for (int k = 0; k < 3; ++k) a[k] = d[k] * (1.0 + sq(delta / (eps + beta[k])));
      break;
    }
    case WenoVariant::zplus: {
      double delta = std::fabs(beta[0] - beta[2]) + cfg.zplus_eps;
      for (int k = 0; k < 3; ++k)
        a[k] = d[k] * (1.0 + sq(delta / (eps + beta[k])) + cfg.lambda * (eps + beta[k]) / delta);
      break;
    }
  }
  double sum = a[0] + a[1] + a[2];
  return {a[0] / sum, a[1] / sum, a[2] / sum};
}

WenoWeights weno_weights(const std::array<double, 3>& beta, const WenoConfig& cfg, Side side) {
  WenoWeights out;
  out.beta = beta;
  out.d = side == Side::right ? std::array<double, 3>{0.3, 0.6, 0.1}
                              : std::array<double, 3>{0.1, 0.6, 0.3};
  out.w = nonlinear_weights(beta, out.d, cfg);
  return out;
}

PointValue weno5_right(const Stencil5& s, const WenoConfig& cfg) {
  auto beta = smoothness_indicators(s);
  auto w = nonlinear_weights(beta, {0.3, 0.6, 0.1}, cfg);
  double v0 = (1.0 / 3.0) * s[2] + (5.0 / 6.0) * s[3] - (1.0 / 6.0) * s[4];
  double v1 = -(1.0 / 6.0) * s[1] + (5.0 / 6.0) * s[2] + (1.0 / 3.0) * s[3];
  double v2 = (1.0 / 3.0) * s[0] - (7.0 / 6.0) * s[1] + (11.0 / 6.0) * s[2];
  double d01 = s[3] - s[2];
  double d2 = s[0] - 3.0 * s[1] + 2.0 * s[2];
  return {w[0] * v0 + w[1] * v1 + w[2] * v2, (w[0] + w[1]) * d01 + w[2] * d2};
}

std::pair<double, double> weno5_interface(const Stencil5& s, const WenoConfig& cfg) {
  double right = weno5_right(s, cfg).value;
  double left = weno5_right(reversed(s), cfg).value;
  return {left, right};
}

GaussPair weno5_gauss(const Stencil5& s, const WenoConfig& cfg) {
  GaussPair g{};
  g.value_m = gauss_value_m(s, cfg, &g.slope_m);
  double sp = 0.0;
  g.value_p = gauss_value_m(reversed(s), cfg, &sp);
  g.slope_p = -sp;
  return g;
}

GaussPair quartic_gauss(const Stencil5& s) {
  Stencil5 r = reversed(s);
  return {quartic_value_m(s), quartic_value_m(r), quartic_slope_m(s), -quartic_slope_m(r)};
}

double quartic_slope_center(const Stencil5& s) {
  return (5.0 / 48.0) * (s[0] - s[4]) + (17.0 / 24.0) * (s[3] - s[1]);
}

Vec4 EigenSystem::project(const Vec4& w) const {
  Vec4 c;
  for (int k = 0; k < 4; ++k) {
    const Vec4& l = left[k];
    c[k] = (l[0] * w[0] + l[1] * w[1]) + (l[2] * w[2] + l[3] * w[3]);
  }
  return c;
}

Vec4 EigenSystem::unproject(const Vec4& c) const {
  Vec4 w;
  for (int m = 0; m < 4; ++m)
    w[m] = (right[0][m] * c[0] + right[3][m] * c[3]) + (right[1][m] * c[1] + right[2][m] * c[2]);
  return w;
}

EigenSystem roe_eigensystem(const Vec4& wl, const Vec4& wr, double gamma) {
  double sl = std::sqrt(wl[0]), sr = std::sqrt(wr[0]);
  double hl = (wl[3] + pressure(wl, gamma)) / wl[0];
  double hr = (wr[3] + pressure(wr, gamma)) / wr[0];
  double den = sl + sr;
  double u = (wl[1] / sl + wr[1] / sr) / den;
  double v = (wl[2] / sl + wr[2] / sr) / den;
  double h = (sl * hl + sr * hr) / den;
  double q2 = u * u + v * v;
  double c2 = (gamma - 1.0) * (h - 0.5 * q2);
  if (!(c2 > 0.0)) throw AdmissibilityError("Roe average has no sound speed");
  double c = std::sqrt(c2);
  double b1 = (gamma - 1.0) / c2;
  double b2 = 0.5 * b1 * q2;
  double uc = u / c, ic = 1.0 / c, b1u = b1 * u, b1v = b1 * v;
  EigenSystem e;
  e.right[0] = {1.0, u - c, v, h - u * c};
  e.right[1] = {1.0, u, v, 0.5 * q2};
  e.right[2] = {0.0, 0.0, 1.0, v};
  e.right[3] = {1.0, u + c, v, h + u * c};
  e.left[0] = {0.5 * (b2 + uc), 0.5 * (-b1u - ic), 0.5 * -b1v, 0.5 * b1};
  e.left[1] = {1.0 - b2, b1u, b1v, -b1};
  e.left[2] = {-v, 0.0, 1.0, 0.0};
  e.left[3] = {0.5 * (b2 - uc), 0.5 * (-b1u + ic), 0.5 * -b1v, 0.5 * b1};
  return e;
}

InterfaceValues reconstruct_interface(const Vec4* cells, const ReconConfig& cfg, double gamma) {
  InterfaceValues out;
  std::array<Vec4, 6> p;
  EigenSystem eig;
  const bool chr = cfg.mode == ReconMode::characteristic;
  if (chr) {
    eig = roe_eigensystem(cells[2], cells[3], gamma);
    for (int k = 0; k < 6; ++k) p[k] = eig.project(cells[k]);
  } else {
    for (int k = 0; k < 6; ++k) p[k] = cells[k];
  }
  Vec4 wl, wr, dl, dr;
  for (int m = 0; m < 4; ++m) {
    PointValue l = weno5_right({p[0][m], p[1][m], p[2][m], p[3][m], p[4][m]}, cfg.weno);
    PointValue r = weno5_right({p[5][m], p[4][m], p[3][m], p[2][m], p[1][m]}, cfg.weno);
    wl[m] = l.value;
    dl[m] = l.slope;
    wr[m] = r.value;
    dr[m] = -r.slope;
  }
  if (chr) {
    out.wl = eig.unproject(wl);
    out.wr = eig.unproject(wr);
    out.dl = eig.unproject(dl);
    out.dr = eig.unproject(dr);
  } else {
    out.wl = wl;
    out.wr = wr;
    out.dl = dl;
    out.dr = dr;
  }
  return out;
}

std::vector<InterfaceValues> reconstruct_characteristic(std::span<const Vec4> line,
                                                        const ReconConfig& cfg,
                                                        const GasModel& gas) {
  if (line.size() < 6) throw std::invalid_argument("line needs at least six cells");
  std::vector<InterfaceValues> out(line.size() - 5);
  for (std::size_t k = 0; k < out.size(); ++k) {
    InterfaceValues iv = reconstruct_interface(line.data() + k, cfg, gas.gamma);
    if (!admissible(iv.wl, gas.gamma) || !admissible(iv.wr, gas.gamma)) {
      iv.wl = line[k + 2];
      iv.wr = line[k + 3];
      iv.dl = {};
      iv.dr = {};
      iv.fallback = true;
    }
    out[k] = iv;
  }
  return out;
}

EquilibriumSlope equilibrium_slope(const Vec4& w_im1, const Vec4& w_i, const Vec4& w_ip1,
                                   const Vec4& w_ip2, const Vec4& w0, double dx) {
  EquilibriumSlope s;
  s.w0 = w0;
  for (int m = 0; m < 4; ++m)
    s.s1[m] = (-(1.0 / 12.0) * (w_ip2[m] - w_im1[m]) + 1.25 * (w_ip1[m] - w_i[m])) / dx;
  return s;
}

}  // namespace ebench
