// Gas model, conserved/primitive states, uniform grids and fields.
#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebench {

using Vec4 = std::array<double, 4>;

struct GasModel {
  double gamma = 1.4;

  explicit GasModel(double g = 1.4);
  // Internal degrees of freedom of the 2D kinetic model.
  double k_internal() const { return (4.0 - 2.0 * gamma) / (gamma - 1.0); }
};

struct ConservedState {
  double rho = 0.0, mx = 0.0, my = 0.0, e = 0.0;

  Vec4 vec() const { return {rho, mx, my, e}; }
  static ConservedState from(const Vec4& w) { return {w[0], w[1], w[2], w[3]}; }
  bool operator==(const ConservedState&) const = default;
};

struct PrimitiveState {
  double rho = 0.0, u = 0.0, v = 0.0, p = 0.0;
  bool operator==(const PrimitiveState&) const = default;
};

// Raised when a state has non-positive density or pressure.  Cell indices are
// -1 when unknown.
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(const std::string& what, int i = -1, int j = -1, double t = -1.0);
  int i, j;
  double t;
};

PrimitiveState to_primitive(const ConservedState& w, const GasModel& gas);
ConservedState to_conserved(const PrimitiveState& q, const GasModel& gas);
double pressure(const Vec4& w, double gamma);
bool admissible(const Vec4& w, double gamma);
double sound_speed(const PrimitiveState& q, const GasModel& gas);

struct Grid {
  int nx = 1, ny = 1;
  double dx = 1.0, dy = 1.0;
  double x0 = 0.0, y0 = 0.0;
  int ghost = 3;

  static Grid make(int nx, int ny, double x0, double x1, double y0, double y1);

  int dims() const { return ny > 1 ? 2 : 1; }
  int gx() const { return ghost; }
  int gy() const { return ny > 1 ? ghost : 0; }
  int stride() const { return nx + 2 * gx(); }
  int rows() const { return ny + 2 * gy(); }
  std::size_t size() const { return static_cast<std::size_t>(stride()) * rows(); }
  // Indices may range over ghost cells: i in [-gx, nx+gx), j in [-gy, ny+gy).
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + gy()) * stride() + (i + gx());
  }
  // Computed symmetrically about the domain midpoint so that mirrored cells
  // have bitwise-negated offsets.
  double xc(int i) const;
  double yc(int j) const;
  double x_mid() const { return x0 + 0.5 * nx * dx; }
  double y_mid() const { return y0 + 0.5 * ny * dy; }
  double cell_area() const { return dims() == 2 ? dx * dy : dx; }
  bool operator==(const Grid&) const = default;
};

// Structure-of-arrays storage of conserved components over interior and
// ghost cells.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g);

  const Grid& grid() const { return grid_; }
  double* comp(int k) { return data_[k].data(); }
  const double* comp(int k) const { return data_[k].data(); }

  Vec4 get(int i, int j) const {
    std::size_t n = grid_.index(i, j);
    return {data_[0][n], data_[1][n], data_[2][n], data_[3][n]};
  }
  void set(int i, int j, const Vec4& w) {
    std::size_t n = grid_.index(i, j);
    for (int k = 0; k < 4; ++k) data_[k][n] = w[k];
  }
  ConservedState at(int i, int j) const { return ConservedState::from(get(i, j)); }

 private:
  Grid grid_;
  std::array<std::vector<double>, 4> data_;
};

struct Totals {
  double mass = 0.0, mx = 0.0, my = 0.0, energy = 0.0;
  Vec4 vec() const { return {mass, mx, my, energy}; }
};

// Interior sums of w*dx*dy, reduced pairwise in a fixed order.
Totals field_totals(const Field& f);

// Pairwise summation with a fixed split order.
double pairwise_sum(const double* a, std::size_t n);

}  // namespace ebench
