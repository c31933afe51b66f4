// Scalar diagnostics computed from solver fields.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ebench/cases.hpp"
#include "ebench/state.hpp"

namespace ebench {

double min_density(const Field& f);

// Max abs difference between the field and its image under a 90 degree
// rotation about the domain center, (x, y, U, V) -> (-y, x, -V, U),
// normalized per component by the max abs value.  Requires nx == ny.
double rotation_symmetry_error(const Field& f);

// Same for the reflection about the diagonal, (x, y, U, V) -> (y, x, V, U).
double diagonal_symmetry_error(const Field& f);

struct ConservationDrift {
  Vec4 initial{}, current{}, outflow{};
  Vec4 relative{};  // |current + outflow - initial| / scale; momenta use max(|initial|, sqrt(2 M E))
  double max_relative() const;
};

// `outflow` is the time-integrated outward boundary flux.
ConservationDrift conservation_drift(const Totals& initial, const Field& now, const Vec4& outflow);

struct OracleError {
  double relative_l1 = 0.0;  // sum |rho - rho_ref| / sum |rho_ref|
  double mean_abs = 0.0;
  std::size_t cells = 0;
};

// Density error of `f` against reference cell averages `ref` over cells
// whose center satisfies `mask` (all cells when empty).
OracleError density_l1_error(const Field& f, const Field& ref,
                             const std::function<bool(double, double)>& mask = {});

// Hurricane near-field disk r < 2t sqrt(p'(rho0)).
OracleError hurricane_near_field_error(const Field& f, const CaseSpec& c, double t);

// Vertical extent of the mixing zone: highest cell center with
// rho > threshold minus lowest with rho < threshold.
double mixing_width(const Field& f, double threshold = 1.5);

struct PyramidDiag {
  double min_density = 0.0;
  std::size_t cells = 0;
};
// Minimum density over cells that the pressureless reference classifies as
// vacuum at time t (same-sign vortex sheets).
PyramidDiag pyramid_min_density(const Field& f, const CaseSpec& c, double t);

// Max relative deviation of the density from the quadrant's initial value
// in the four corner blocks of side `block` (domain units).
double far_quadrant_density_error(const Field& f, const CaseSpec& c, double block = 0.1);

// Fraction of cells classified as an undisturbed quadrant by the pressureless
// reference whose density lies within `tol` (relative) of that quadrant's.
double pressureless_agreement(const Field& f, const CaseSpec& c, double t, double tol = 0.05);

// Fallback events recorded in cells with x > xc and y > yc.
std::int64_t fallbacks_in_quadrant1(const std::vector<std::uint32_t>& per_cell, const Grid& g,
                                    double xc, double yc);

// Largest relative pressure jump between neighbouring cells.
double shock_indicator(const Field& f, const GasModel& gas);

// Total variation of the density along the first row.
double density_variation(const Field& f);

// Density along the first row, restricted by averaging groups of `factor`
// cells (used to compare a fine reference with a coarse run).
std::vector<double> restrict_density(const Field& f, int factor);

// Mean |rho_i - ref_i| along the first row.
double profile_l1(const Field& f, const std::vector<double>& ref);

struct WavePositions {
  double shock = 0.0, contact = 0.0;
  double post_shock_density = 0.0;
};
// Locates the right-moving shock and the contact in a 1D density profile
// by the half-jump crossings between the given plateau densities.
WavePositions locate_waves(const Field& f, double rho_right, double rho_star_r,
                           double rho_star_l);

}  // namespace ebench
