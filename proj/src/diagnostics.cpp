#include "ebench/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebench {

double min_density(const Field& f) {
  const Grid& g = f.grid();
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) m = std::min(m, f.get(i, j)[0]);
  return m;
}

namespace {

// Shared driver for the two symmetry measures.  `image` maps a cell to its
// partner and `transform` maps the partner's state into the cell's frame.
template <class Image, class Transform>
double symmetry_error(const Field& f, Image image, Transform transform) {
  const Grid& g = f.grid();
  if (g.nx != g.ny) throw std::invalid_argument("symmetry check needs a square grid");
  Vec4 scale{}, diff{};
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      Vec4 w = f.get(i, j);
      auto [ii, jj] = image(i, j);
      Vec4 r = transform(f.get(ii, jj));
      for (int m = 0; m < 4; ++m) {
        scale[m] = std::max(scale[m], std::fabs(w[m]));
        diff[m] = std::max(diff[m], std::fabs(w[m] - r[m]));
      }
    }
  double e = 0.0;
  for (int m = 0; m < 4; ++m) e = std::max(e, scale[m] > 0.0 ? diff[m] / scale[m] : diff[m]);
  return e;
}

}  // namespace

double rotation_symmetry_error(const Field& f) {
  const int n = f.grid().nx;
  // The cell at (-y, x) has indices (n-1-j, i); its velocity is the rotated
  // one, (-V, U), so the partner state maps back by (U', V') -> (V', -U').
  return symmetry_error(
      f, [n](int i, int j) { return std::pair<int, int>{n - 1 - j, i}; },
      [](const Vec4& w) { return Vec4{w[0], w[2], -w[1], w[3]}; });
}

double diagonal_symmetry_error(const Field& f) {
  return symmetry_error(
      f, [](int i, int j) { return std::pair<int, int>{j, i}; },
      [](const Vec4& w) { return Vec4{w[0], w[2], w[1], w[3]}; });
}

double ConservationDrift::max_relative() const {
  return std::max({relative[0], relative[1], relative[2], relative[3]});
}

ConservationDrift conservation_drift(const Totals& initial, const Field& now, const Vec4& outflow) {
  ConservationDrift d;
  d.initial = initial.vec();
  d.current = field_totals(now).vec();
  d.outflow = outflow;
  // Momentum totals may vanish; sqrt(2 M E) bounds them and sets their scale.
  const double pscale = std::sqrt(2.0 * std::fabs(d.initial[0]) * std::fabs(d.initial[3]));
  for (int m = 0; m < 4; ++m) {
    double ref = std::max(std::fabs(d.initial[m]), 1e-300);
    if (m == 1 || m == 2) ref = std::max(ref, pscale);
    d.relative[m] = std::fabs((d.current[m] + d.outflow[m]) - d.initial[m]) / ref;
  }
  return d;
}

OracleError density_l1_error(const Field& f, const Field& ref,
                             const std::function<bool(double, double)>& mask) {
  const Grid& g = f.grid();
  if (!(ref.grid() == g)) throw std::invalid_argument("reference grid differs from solver grid");
  std::vector<double> num, den;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (mask && !mask(g.xc(i), g.yc(j))) continue;
      double r = ref.get(i, j)[0];
      num.push_back(std::fabs(f.get(i, j)[0] - r));
      den.push_back(std::fabs(r));
    }
  OracleError e;
  e.cells = num.size();
  if (num.empty()) return e;
  double sn = pairwise_sum(num.data(), num.size()), sd = pairwise_sum(den.data(), den.size());
  e.relative_l1 = sd > 0.0 ? sn / sd : sn;
  e.mean_abs = sn / static_cast<double>(num.size());
  return e;
}

OracleError hurricane_near_field_error(const Field& f, const CaseSpec& c, double t) {
  if (!c.has_oracle()) throw std::invalid_argument(c.id() + " has no reference solution");
  HurricaneParams h;
  h.gamma = c.gamma;
  const double r = hurricane_match_radius(h, t);
  Field ref = oracle_averages(c, f.grid(), t);
  return density_l1_error(f, ref, [r](double x, double y) { return std::hypot(x, y) < r; });
}

double mixing_width(const Field& f, double threshold) {
  const Grid& g = f.grid();
  double top = -std::numeric_limits<double>::infinity();
  double bottom = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double rho = f.get(i, j)[0];
      if (rho > threshold) top = std::max(top, g.yc(j));
      if (rho < threshold) bottom = std::min(bottom, g.yc(j));
    }
  if (!std::isfinite(top) || !std::isfinite(bottom)) return 0.0;
  return std::max(0.0, top - bottom);
}

namespace {

PressurelessReference pless_for(const CaseSpec& c) {
  if (!c.quadrants) throw std::invalid_argument(c.id() + " is not a four-quadrant case");
  std::array<CornerState, 4> q;
  for (int k = 0; k < 4; ++k) q[k] = {(*c.quadrants)[k].rho, (*c.quadrants)[k].u, (*c.quadrants)[k].v};
  SheetSign sign = c.name == "vortex-sheets-opposite" ? SheetSign::opposite : SheetSign::same;
  return PressurelessReference(sign, q, c.xc, c.yc);
}

}  // namespace

PyramidDiag pyramid_min_density(const Field& f, const CaseSpec& c, double t) {
  PressurelessReference ref = pless_for(c);
  const Grid& g = f.grid();
  PyramidDiag d;
  d.min_density = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (ref.sample(g.xc(i), g.yc(j), t).region != PlessRegion::vacuum) continue;
      ++d.cells;
      d.min_density = std::min(d.min_density, f.get(i, j)[0]);
    }
  return d;
}

double far_quadrant_density_error(const Field& f, const CaseSpec& c, double block) {
  if (!c.quadrants) throw std::invalid_argument(c.id() + " is not a four-quadrant case");
  const Grid& g = f.grid();
  double worst = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double x = g.xc(i), y = g.yc(j);
      bool near_x = x < c.x0 + block || x > c.x1 - block;
      bool near_y = y < c.y0 + block || y > c.y1 - block;
      if (!near_x || !near_y) continue;
      int k = (x > c.xc) ? (y > c.yc ? 0 : 3) : (y > c.yc ? 1 : 2);
      double rho_k = (*c.quadrants)[k].rho;
      worst = std::max(worst, std::fabs(f.get(i, j)[0] - rho_k) / rho_k);
    }
  return worst;
}

double pressureless_agreement(const Field& f, const CaseSpec& c, double t, double tol) {
  PressurelessReference ref = pless_for(c);
  const Grid& g = f.grid();
  std::size_t total = 0, good = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      PlessSample s = ref.sample(g.xc(i), g.yc(j), t);
      if (s.region != PlessRegion::quadrant) continue;
      ++total;
      if (std::fabs(f.get(i, j)[0] - s.rho) <= tol * s.rho) ++good;
    }
  return total ? static_cast<double>(good) / static_cast<double>(total) : 0.0;
}

std::int64_t fallbacks_in_quadrant1(const std::vector<std::uint32_t>& per_cell, const Grid& g,
                                    double xc, double yc) {
  if (per_cell.size() != g.size()) return 0;
  std::int64_t n = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (g.xc(i) > xc && g.yc(j) > yc) n += per_cell[g.index(i, j)];
  return n;
}

double shock_indicator(const Field& f, const GasModel& gas) {
  const Grid& g = f.grid();
  double s = 0.0;
  auto jump = [&](const Vec4& a, const Vec4& b) {
    double pa = pressure(a, gas.gamma), pb = pressure(b, gas.gamma);
    return std::fabs(pa - pb) / std::min(pa, pb);
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (i + 1 < g.nx) s = std::max(s, jump(f.get(i, j), f.get(i + 1, j)));
      if (j + 1 < g.ny) s = std::max(s, jump(f.get(i, j), f.get(i, j + 1)));
    }
  return s;
}

double density_variation(const Field& f) {
  const Grid& g = f.grid();
  double tv = 0.0;
  for (int i = 0; i + 1 < g.nx; ++i) tv += std::fabs(f.get(i + 1, 0)[0] - f.get(i, 0)[0]);
  return tv;
}

std::vector<double> restrict_density(const Field& f, int factor) {
  const Grid& g = f.grid();
  if (factor < 1 || g.nx % factor != 0) throw std::invalid_argument("bad restriction factor");
  std::vector<double> out(g.nx / factor);
  for (std::size_t k = 0; k < out.size(); ++k) {
    double s = 0.0;
    for (int q = 0; q < factor; ++q) s += f.get(static_cast<int>(k) * factor + q, 0)[0];
    out[k] = s / factor;
  }
  return out;
}

double profile_l1(const Field& f, const std::vector<double>& ref) {
  const Grid& g = f.grid();
  if (ref.size() != static_cast<std::size_t>(g.nx))
    throw std::invalid_argument("reference profile length differs from grid");
  std::vector<double> d(g.nx);
  for (int i = 0; i < g.nx; ++i) d[i] = std::fabs(f.get(i, 0)[0] - ref[i]);
  return pairwise_sum(d.data(), d.size()) / g.nx;
}

WavePositions locate_waves(const Field& f, double rho_right, double rho_star_r,
                           double rho_star_l) {
  const Grid& g = f.grid();
  auto rho = [&](int i) { return f.get(i, 0)[0]; };
  auto crossing = [&](int i, double level) {
    // Linear interpolation between centers of cells i and i+1.
    double a = rho(i), b = rho(i + 1);
    double s = (a == b) ? 0.5 : (level - a) / (b - a);
    return g.xc(i) + std::clamp(s, 0.0, 1.0) * g.dx;
  };
  WavePositions w;
  const double shock_level = 0.5 * (rho_right + rho_star_r);
  int i = g.nx - 2;
  while (i >= 0 && rho(i) <= shock_level) --i;
  if (i < 0) throw std::runtime_error("no shock found in profile");
  w.shock = crossing(i, shock_level);
  const int shock_cell = i;
  const double contact_level = 0.5 * (rho_star_r + rho_star_l);
  const bool rising = rho_star_l > rho_star_r;
  while (i >= 0 && (rising ? rho(i) <= contact_level : rho(i) >= contact_level)) --i;
  if (i < 0) throw std::runtime_error("no contact found in profile");
  w.contact = crossing(i, contact_level);
  const int contact_cell = i + 1;
  int a = contact_cell + (shock_cell - contact_cell) / 3;
  int b = shock_cell - (shock_cell - contact_cell) / 3;
  if (b < a) a = b = (contact_cell + shock_cell) / 2;
  double s = 0.0;
  for (int k = a; k <= b; ++k) s += rho(k);
  w.post_shock_density = s / (b - a + 1);
  return w;
}

}  // namespace ebench
