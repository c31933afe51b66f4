// Boundary conditions, the semi-discrete operator and the two-stage
// fourth-order time step.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ebench/kinetic.hpp"
#include "ebench/reconstruction.hpp"
#include "ebench/state.hpp"

namespace ebench {

enum class BoundaryKind { outflow, reflective, fixed, periodic };

struct EdgeCondition {
  BoundaryKind kind = BoundaryKind::outflow;
  PrimitiveState state{};  // used by `fixed`
};

struct BoundaryCondition {
  EdgeCondition left, right, bottom, top;

  static BoundaryCondition all(BoundaryKind k);
  // Throws if periodic edges are not paired.
  void validate() const;
};

void fill_ghosts(Field& f, const BoundaryCondition& bc, const GasModel& gas);

enum class SourceKind { none, gravity };

// Gravity along +y with magnitude g: S = (0, 0, rho g, rho V g).
struct SourceModel {
  SourceKind kind = SourceKind::none;
  double g = 1.0;
};

// Flux-expansion horizon of the intermediate stage: the full step (default)
// or half of it.  The half horizon is anti-dissipative on near-sonic plateaus.
enum class StageHorizon { full, half };

struct SchemeConfig {
  ReconConfig recon;
  CollisionTimeModel tau;
  RelaxationForm form = RelaxationForm::euler;
  int gauss_points = 2;  // tangential quadrature points per 2D interface (1 or 2)
  StageHorizon stage_horizon = StageHorizon::full;
  double cfl = 0.4;
  int workers = 1;
};

enum Edge { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

// Result of one evaluation of the semi-discrete operator.
struct OperatorOutput {
  Field L, Lt;                        // interior cells only
  std::array<Vec4, 4> edge_flux{};    // outward flux integrated along each edge
  std::array<Vec4, 4> edge_flux_t{};  // and its time derivative
  std::int64_t fallbacks = 0;
  std::vector<std::uint32_t> fallback_cells;  // per cell (grid index), when tracked
};

double stable_dt(const Field& f, const GasModel& gas, double cfl);

// Two-stage fourth-order update for w' = L(w) with Lt = dL/dt:
//   w* = w + dt/2 L(w) + dt^2/8 Lt(w)
//   w' = w + dt L(w) + dt^2/6 (Lt(w) + 2 Lt(w*))
inline double s2o4_stage(double w, double L, double Lt, double dt) {
  return w + 0.5 * dt * L + 0.125 * dt * dt * Lt;
}
inline double s2o4_final(double w, double L0, double Lt0, double Lt1, double dt) {
  return w + dt * L0 + (dt * dt / 6.0) * (Lt0 + 2.0 * Lt1);
}

// Ghosts of `f` must be filled.  `dt_step` sets the collision time and
// `horizon` the flux-expansion interval.  Every interface of a cell flagged
// in `first_order_cells` (per grid index) uses first-order values.
void spatial_operator(const Field& f, const GasModel& gas, double dt_step, double horizon,
                      const SchemeConfig& cfg, const SourceModel& src, OperatorOutput& out,
                      bool track_fallback_cells = false,
                      const std::vector<std::uint8_t>* first_order_cells = nullptr);

// Source and its time derivative for cell averages `f` given the full
// operator value L (including the source) at each cell.
struct SourceTerms {
  Vec4 s, st;
};
SourceTerms source_terms(const Vec4& w, const Vec4& L, const SourceModel& src);

class StepFailure : public AdmissibilityError {
 public:
  using AdmissibilityError::AdmissibilityError;
};

struct RunStats {
  std::int64_t steps = 0;
  std::int64_t fallbacks = 0;
  std::int64_t redone_steps = 0;  // steps recomputed with first-order cells
  Vec4 boundary_outflow{};  // time-integrated outward flux through all edges
  std::vector<std::uint32_t> fallback_cells;
};

class Solver {
 public:
  Solver(Field init, GasModel gas, BoundaryCondition bc, SourceModel src, SchemeConfig cfg,
         double t0 = 0.0);

  double stable_dt() const;
  // Advances by dt.  When an intermediate or final cell state is
  // inadmissible the step is recomputed with first-order values on the
  // interfaces of the offending cells (growing the set a few times); if that
  // does not help it throws StepFailure and leaves the state untouched.
  void step(double dt);
  // Steps to t_end exactly; `on_step` is called after every step.
  void advance_to(double t_end, const std::function<void(const Solver&)>& on_step = {});

  const Field& field() const { return w_; }
  double time() const { return t_; }
  const RunStats& stats() const { return stats_; }
  const GasModel& gas() const { return gas_; }
  void set_track_fallback_cells(bool on);

  // Intermediate state w* of the most recent step (for determinism checks).
  const Field& stage_state() const { return ws_; }

 private:
  void check(const Field& f, const char* what) const;
  std::vector<std::size_t> bad_cells(const Field& f) const;
  // One attempt; returns the inadmissible cells of the failing stage.
  std::vector<std::size_t> try_step(double dt, const std::vector<std::uint8_t>* mask,
                                    Field& next, const char** stage);

  Field w_, ws_;
  GasModel gas_;
  BoundaryCondition bc_;
  SourceModel src_;
  SchemeConfig cfg_;
  double t_;
  RunStats stats_;
  OperatorOutput op0_, op1_;
  bool track_cells_ = false;
};

}  // namespace ebench
