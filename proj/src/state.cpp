#include "ebench/state.hpp"

#include <cmath>
#include <sstream>

namespace ebench {

GasModel::GasModel(double g) : gamma(g) {
  if (!(g > 1.0)) throw std::invalid_argument("gamma must exceed 1");
}

AdmissibilityError::AdmissibilityError(const std::string& what, int i_, int j_, double t_)
    : std::runtime_error(what), i(i_), j(j_), t(t_) {}

PrimitiveState to_primitive(const ConservedState& w, const GasModel& gas) {
  if (!(w.rho > 0.0)) throw AdmissibilityError("non-positive density");
  double u = w.mx / w.rho, v = w.my / w.rho;
  double p = (gas.gamma - 1.0) * (w.e - 0.5 * (w.mx * u + w.my * v));
  if (!std::isfinite(p)) throw AdmissibilityError("non-finite pressure");
  return {w.rho, u, v, p};
}

ConservedState to_conserved(const PrimitiveState& q, const GasModel& gas) {
  if (!(q.rho > 0.0)) throw AdmissibilityError("non-positive density");
  if (!(q.p > 0.0)) throw AdmissibilityError("non-positive pressure");
  double mx = q.rho * q.u, my = q.rho * q.v;
  double e = 0.5 * (mx * q.u + my * q.v) + q.p / (gas.gamma - 1.0);
  return {q.rho, mx, my, e};
}

double pressure(const Vec4& w, double gamma) {
  return (gamma - 1.0) * (w[3] - 0.5 * (w[1] * w[1] + w[2] * w[2]) / w[0]);
}

bool admissible(const Vec4& w, double gamma) {
  return w[0] > 0.0 && pressure(w, gamma) > 0.0 && std::isfinite(w[1]) && std::isfinite(w[2]);
}

double sound_speed(const PrimitiveState& q, const GasModel& gas) {
  return std::sqrt(gas.gamma * q.p / q.rho);
}

Grid Grid::make(int nx, int ny, double x0, double x1, double y0, double y1) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid needs at least one cell per direction");
  if (!(x1 > x0) || (ny > 1 && !(y1 > y0))) throw std::invalid_argument("empty domain");
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.x0 = x0;
  g.y0 = y0;
  g.dx = (x1 - x0) / nx;
  g.dy = ny > 1 ? (y1 - y0) / ny : 1.0;
  return g;
}

double Grid::xc(int i) const { return x_mid() + (2.0 * i + 1.0 - nx) * (0.5 * dx); }
double Grid::yc(int j) const {
  if (dims() == 1) return y0 + 0.5 * dy;
  return y_mid() + (2.0 * j + 1.0 - ny) * (0.5 * dy);
}

Field::Field(const Grid& g) : grid_(g) {
  if (g.ghost < 3) throw std::invalid_argument("ghost width must be at least 3");
  for (auto& d : data_) d.assign(g.size(), 0.0);
}

double pairwise_sum(const double* a, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += a[k];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(a, h) + pairwise_sum(a + h, n - h);
}

Totals field_totals(const Field& f) {
  const Grid& g = f.grid();
  std::vector<double> rows(g.ny);
  Vec4 out{};
  for (int k = 0; k < 4; ++k) {
    const double* c = f.comp(k);
    for (int j = 0; j < g.ny; ++j) {
      const double* r = c + g.index(0, j);
      rows[j] = pairwise_sum(r, g.nx);
    }
    out[k] = pairwise_sum(rows.data(), g.ny) * g.cell_area();
  }
  return {out[0], out[1], out[2], out[3]};
}

}  // namespace ebench
