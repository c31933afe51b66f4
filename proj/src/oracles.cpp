#include "ebench/oracles.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ebench {

namespace {

double sound(const PrimitiveState& q, double g) { return std::sqrt(g * q.p / q.rho); }

// f_K(p) and its derivative for one side.
void side_function(double p, const PrimitiveState& s, double g, double& f, double& df) {
  const double c = sound(s, g);
  if (p > s.p) {
    const double a = 2.0 / ((g + 1.0) * s.rho);
    const double b = (g - 1.0) / (g + 1.0) * s.p;
    const double q = std::sqrt(a / (b + p));
    f = (p - s.p) * q;
    df = q * (1.0 - 0.5 * (p - s.p) / (b + p));
  } else {
    const double z = (g - 1.0) / (2.0 * g);
    f = 2.0 * c / (g - 1.0) * (std::pow(p / s.p, z) - 1.0);
    df = 1.0 / (s.rho * c) * std::pow(p / s.p, -(g + 1.0) / (2.0 * g));
  }
}

PrimitiveState fan_left(const PrimitiveState& l, double g, double xi) {
  const double c = sound(l, g);
  const double cf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * (l.u - xi));
  const double u = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * l.u + xi);
  const double rho = l.rho * std::pow(cf / c, 2.0 / (g - 1.0));
  const double p = l.p * std::pow(cf / c, 2.0 * g / (g - 1.0));
  return {rho, u, l.v, p};
}

PrimitiveState fan_right(const PrimitiveState& r, double g, double xi) {
  const double c = sound(r, g);
  const double cf = 2.0 / (g + 1.0) * (c - 0.5 * (g - 1.0) * (r.u - xi));
  const double u = 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * r.u + xi);
  const double rho = r.rho * std::pow(cf / c, 2.0 / (g - 1.0));
  const double p = r.p * std::pow(cf / c, 2.0 * g / (g - 1.0));
  return {rho, u, r.v, p};
}

}  // namespace

double riemann_pressure_function(double p, const PrimitiveState& l, const PrimitiveState& r,
                                 double g) {
  double fl, dl, fr, dr;
  side_function(p, l, g, fl, dl);
  side_function(p, r, g, fr, dr);
  return fl + fr + (r.u - l.u);
}

RiemannSolution1D exact_riemann(const PrimitiveState& l, const PrimitiveState& r, double g) {
  if (!(l.rho > 0.0 && l.p > 0.0 && r.rho > 0.0 && r.p > 0.0))
    throw std::invalid_argument("Riemann data must have positive density and pressure");
  RiemannSolution1D s;
  s.left = l;
  s.right = r;
  s.gamma = g;
  const double cl = sound(l, g), cr = sound(r, g);
  const double du = r.u - l.u;
  if (2.0 * (cl + cr) / (g - 1.0) <= du) {
    s.vacuum = true;
    s.p_star = 0.0;
    s.rho_star_l = s.rho_star_r = 0.0;
    s.u_star = 0.5 * (l.u + 2.0 * cl / (g - 1.0) + r.u - 2.0 * cr / (g - 1.0));
    return s;
  }
  auto f = [&](double p, double& df) {
    double fl, dl, fr, dr;
    side_function(p, l, g, fl, dl);
    side_function(p, r, g, fr, dr);
    df = dl + dr;
    return fl + fr + du;
  };
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((cl + cr - 0.5 * (g - 1.0) * du) / (cl / std::pow(l.p, z) + cr / std::pow(r.p, z)),
                      1.0 / z);
  if (!(p > 0.0) || !std::isfinite(p)) p = 0.5 * (l.p + r.p);
  double lo = 0.0, hi = p, df = 0.0;
  while (f(hi, df) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  double fp = f(p, df);
  int it = 0;
  for (; it < 200; ++it) {
    if (std::fabs(fp) < 1e-13) break;
    if (fp < 0.0) lo = p; else hi = p;
    double next = p - fp / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - p) <= 1e-16 * p) {
      p = next;
      fp = f(p, df);
      break;
    }
    p = next;
    fp = f(p, df);
  }
  if (!(std::fabs(fp) < 1e-12)) throw std::runtime_error("exact Riemann solver did not converge");
  double fl, dl, fr, dr;
  side_function(p, l, g, fl, dl);
  side_function(p, r, g, fr, dr);
  s.p_star = p;
  s.u_star = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
  s.iterations = it;
  const double g6 = (g - 1.0) / (g + 1.0);
  auto star_rho = [&](const PrimitiveState& k) {
    double ratio = p / k.p;
    return p > k.p ? k.rho * (ratio + g6) / (g6 * ratio + 1.0) : k.rho * std::pow(ratio, 1.0 / g);
  };
  s.rho_star_l = star_rho(l);
  s.rho_star_r = star_rho(r);
  s.left_wave = p > l.p ? WaveKind::shock : WaveKind::rarefaction;
  s.right_wave = p > r.p ? WaveKind::shock : WaveKind::rarefaction;
  return s;
}

double RiemannSolution1D::left_head() const {
  const double g = gamma, c = sound(left, g);
  if (vacuum || left_wave == WaveKind::rarefaction) return left.u - c;
  return left.u - c * std::sqrt((g + 1.0) / (2.0 * g) * p_star / left.p + (g - 1.0) / (2.0 * g));
}

double RiemannSolution1D::left_tail() const {
  const double g = gamma, c = sound(left, g);
  if (vacuum) return left.u + 2.0 * c / (g - 1.0);
  if (left_wave == WaveKind::shock) return left_head();
  return u_star - c * std::pow(p_star / left.p, (g - 1.0) / (2.0 * g));
}

double RiemannSolution1D::contact() const { return u_star; }

double RiemannSolution1D::right_tail() const {
  const double g = gamma, c = sound(right, g);
  if (vacuum) return right.u - 2.0 * c / (g - 1.0);
  if (right_wave == WaveKind::shock) return right_head();
  return u_star + c * std::pow(p_star / right.p, (g - 1.0) / (2.0 * g));
}

double RiemannSolution1D::right_head() const {
  const double g = gamma, c = sound(right, g);
  if (vacuum || right_wave == WaveKind::rarefaction) return right.u + c;
  return right.u + c * std::sqrt((g + 1.0) / (2.0 * g) * p_star / right.p + (g - 1.0) / (2.0 * g));
}

PrimitiveState RiemannSolution1D::sample(double xi) const {
  const double g = gamma;
  if (vacuum) {
    if (xi <= left_head()) return left;
    if (xi < left_tail()) return fan_left(left, g, xi);
    if (xi >= right_head()) return right;
    if (xi > right_tail()) return fan_right(right, g, xi);
    return {0.0, xi, xi < u_star ? left.v : right.v, 0.0};
  }
  if (xi <= u_star) {
    if (xi <= left_head()) return left;
    if (left_wave == WaveKind::shock || xi >= left_tail()) return {rho_star_l, u_star, left.v, p_star};
    return fan_left(left, g, xi);
  }
  if (xi >= right_head()) return right;
  if (right_wave == WaveKind::shock || xi <= right_tail()) return {rho_star_r, u_star, right.v, p_star};
  return fan_right(right, g, xi);
}

double HurricaneParams::c0() const { return std::sqrt(dp0()); }
double HurricaneParams::dp0() const { return gamma * A * std::pow(rho0, gamma - 1.0); }
bool HurricaneParams::critical() const {
  return gamma == 2.0 && std::fabs(v0 - std::sqrt(2.0) * c0()) <= 1e-12 * v0;
}

PrimitiveState hurricane_initial(const HurricaneParams& h, double x, double y) {
  const double r = std::sqrt(x * x + y * y);
  const double p = h.A * std::pow(h.rho0, h.gamma);
  if (r == 0.0) return {h.rho0, 0.0, 0.0, p};
  return {h.rho0, h.v0 * y / r, -h.v0 * x / r, p};
}

double hurricane_match_radius(const HurricaneParams& h, double t) { return 2.0 * t * std::sqrt(h.dp0()); }

PrimitiveState hurricane_exact(const HurricaneParams& h, double x, double y, double t) {
  if (!h.critical())
    throw std::invalid_argument("the exact hurricane solution needs gamma = 2 and v0 = sqrt(2) c0");
  if (!(t > 0.0)) throw std::invalid_argument("hurricane_exact needs t > 0");
  const double r2 = x * x + y * y;
  const double r = std::sqrt(r2);
  const double dp = h.dp0();
  if (r >= hurricane_match_radius(h, t)) {
    const double s = std::sqrt(2.0 * dp) * std::sqrt(r2 - 2.0 * t * t * dp);
    const double c = x / r, sn = y / r;
    const double u = (2.0 * t * dp * c + s * sn) / r;
    const double v = (2.0 * t * dp * sn - s * c) / r;
    return {h.rho0, u, v, h.A * std::pow(h.rho0, h.gamma)};
  }
  const double rho = r2 / (8.0 * h.A * t * t);
  return {rho, (x + y) / (2.0 * t), (-x + y) / (2.0 * t), h.A * std::pow(rho, h.gamma)};
}

bool pressureless_data_valid(SheetSign sign, const std::array<CornerState, 4>& q, std::string* why) {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  for (const auto& c : q)
    if (!(c.rho > 0.0)) return fail("corner densities must be positive");
  if (q[0].u != q[1].u || q[2].u != q[3].u) return fail("need U1 = U2 and U3 = U4");
  if (q[1].v != q[2].v || q[0].v != q[3].v) return fail("need V2 = V3 and V1 = V4");
  if (!(q[1].v > q[0].v)) return fail("need V2 = V3 > V1 = V4");
  if (sign == SheetSign::same && !(q[0].u > q[2].u))
    return fail("same-sign data need U1 = U2 > U3 = U4");
  if (sign == SheetSign::opposite && !(q[2].u > q[0].u))
    return fail("opposite-sign data need U3 = U4 > U1 = U2");
  return true;
}

PressurelessReference::PressurelessReference(SheetSign sign, const std::array<CornerState, 4>& q,
                                             double xc, double yc)
    : sign_(sign), q_(q), xc_(xc), yc_(yc) {
  std::string why;
  if (!pressureless_data_valid(sign, q, &why)) throw std::invalid_argument(why);
}

std::array<std::array<double, 2>, 4> PressurelessReference::vertices() const {
  return {{{q_[0].u, q_[0].v}, {q_[1].u, q_[1].v}, {q_[2].u, q_[2].v}, {q_[3].u, q_[3].v}}};
}

PlessSample PressurelessReference::sample(double x, double y, double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("pressureless sample needs t > 0");
  return sample_similarity((x - xc_) / t, (y - yc_) / t);
}

PlessSample PressurelessReference::sample_similarity(double xi, double eta) const {
  // Material of quadrant k occupies its initial quadrant translated by
  // (U_k, V_k) t.
  auto edge = [](double a, double b) { return std::fabs(a - b) <= 1e-12; };
  for (int k = 0; k < 4; ++k)
    if (edge(xi, q_[k].u) || edge(eta, q_[k].v)) {
      // Points on a translated quadrant edge are left unclassified.
      const bool right = k == 0 || k == 3, up = k == 0 || k == 1;
      bool in_x = right ? xi >= q_[k].u - 1e-12 : xi <= q_[k].u + 1e-12;
      bool in_y = up ? eta >= q_[k].v - 1e-12 : eta <= q_[k].v + 1e-12;
      if (in_x && in_y) return PlessSample{};
    }
  int hits[4], n = 0;
  for (int k = 0; k < 4; ++k) {
    const bool right = k == 0 || k == 3, up = k == 0 || k == 1;
    bool in_x = right ? xi > q_[k].u : xi < q_[k].u;
    bool in_y = up ? eta > q_[k].v : eta < q_[k].v;
    if (in_x && in_y) hits[n++] = k;
  }
  PlessSample s;
  if (n == 0) {
    s.region = PlessRegion::vacuum;
    return s;
  }
  if (n == 1) {
    const CornerState& c = q_[hits[0]];
    s.region = PlessRegion::quadrant;
    s.quadrant = hits[0] + 1;
    s.rho = c.rho;
    s.u = c.u;
    s.v = c.v;
    return s;
  }
  s.region = PlessRegion::delta_support;
  s.delta_strength = std::sqrt(q_[0].rho * q_[2].rho);
  return s;
}

}  // namespace ebench
