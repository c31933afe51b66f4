// Benchmark case registry.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebench/integrator.hpp"
#include "ebench/oracles.hpp"
#include "ebench/state.hpp"

namespace ebench {

// How initial cell averages are formed from the pointwise initial condition.
enum class IcAveraging { center, gauss, subsample };

struct CaseSpec {
  std::string name;                          // registry name
  std::map<std::string, std::string> params; // e.g. p0 for vortex sheets
  int dimension = 2;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  double gamma = 1.4;
  std::function<PrimitiveState(double, double)> ic;
  IcAveraging averaging = IcAveraging::center;
  int averaging_points = 4;
  BoundaryCondition bc;
  double t_start = 0.0;
  double t_end = 1.0;
  int nx = 100, ny = 1;
  SourceModel source;
  // Reconstruction used unless the run configuration overrides it.
  ReconMode recon = ReconMode::characteristic;
  std::vector<std::string> diagnostics;
  std::vector<double> output_times;
  // Exact or reference solution (x, y, t) -> primitive state, when known.
  std::function<PrimitiveState(double, double, double)> oracle;
  std::string notes;
  // Four-quadrant Riemann data (counterclockwise from the upper right), for
  // 2D Riemann cases.
  std::optional<std::array<PrimitiveState, 4>> quadrants;
  // Corner of 2D Riemann data, or the initial jump of 1D Riemann data.
  double xc = 0.0, yc = 0.0;

  // Canonical identifier, including parameters (`name:key=value,...`).
  std::string id() const;
  Grid grid() const { return grid(nx, ny); }
  Grid grid(int nx, int ny) const;
  // Grid with spacing 1/inv_h in both directions.
  Grid grid_for_spacing(double inv_h) const;
  bool has_oracle() const { return static_cast<bool>(oracle); }
};

// Parses `name` or `name:key=value,...` and builds the case.  Throws
// std::invalid_argument for unknown names or bad parameters.
CaseSpec make_case(const std::string& id);

// Registered names in display form.
std::vector<std::string> list_cases();

// Cell averages of the initial condition on `grid` (ghosts unfilled).
Field initial_field(const CaseSpec& c, const Grid& grid);

// Cell-center samples of the oracle at time t, as primitive values per cell
// (rho, u, v, p stored in the four components).
Field sample_oracle(const CaseSpec& c, const Grid& grid, double t);

// Cell averages of the oracle at time t (conserved variables), formed with
// the case's averaging rule.
Field oracle_averages(const CaseSpec& c, const Grid& grid, double t);

// Flat key=value serialization and its inverse.
std::string emit_case_config(const CaseSpec& c);
CaseSpec parse_case_config(const std::string& text);

// Structural comparison used by the round-trip property; the IC is compared
// on a sample grid.
bool same_case(const CaseSpec& a, const CaseSpec& b);

// Data used by individual cases, exposed for tests and diagnostics.
HurricaneParams hurricane_params(const std::string& regime);
std::array<CornerState, 4> vortex_sheet_corners(SheetSign sign);
RiemannSolution1D large_density_ratio_solution(bool mild, bool caption_reading = false);

std::string to_string(BoundaryKind k);
BoundaryKind boundary_kind_from_string(const std::string& s);

}  // namespace ebench
