#include "ebench/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ebench/parallel.hpp"

namespace ebench {

BoundaryCondition BoundaryCondition::all(BoundaryKind k) {
  BoundaryCondition bc;
  bc.left.kind = bc.right.kind = bc.bottom.kind = bc.top.kind = k;
  return bc;
}

void BoundaryCondition::validate() const {
  auto per = [](const EdgeCondition& e) { return e.kind == BoundaryKind::periodic; };
  if (per(left) != per(right) || per(bottom) != per(top))
    throw std::invalid_argument("periodic boundaries must be paired");
}

namespace {

Vec4 ghost_value(const EdgeCondition& e, const Vec4& mirror, const Vec4& nearest,
                 const Vec4& wrap, int normal, const GasModel& gas) {
  switch (e.kind) {
    case BoundaryKind::outflow:
      return nearest;
    case BoundaryKind::reflective: {
      Vec4 g = mirror;
      g[normal] = -g[normal];
      return g;
    }
    case BoundaryKind::fixed:
      return to_conserved(e.state, gas).vec();
    case BoundaryKind::periodic:
      return wrap;
  }
  return nearest;
}

}  // namespace

void fill_ghosts(Field& f, const BoundaryCondition& bc, const GasModel& gas) {
  bc.validate();
  const Grid& g = f.grid();
  const int nx = g.nx, ny = g.ny, gx = g.gx(), gy = g.gy();
  for (int j = 0; j < ny; ++j) {
    for (int k = 0; k < gx; ++k) {
      f.set(-1 - k, j, ghost_value(bc.left, f.get(k, j), f.get(0, j), f.get(nx - 1 - k, j), 1, gas));
      f.set(nx + k, j,
            ghost_value(bc.right, f.get(nx - 1 - k, j), f.get(nx - 1, j), f.get(k, j), 1, gas));
    }
  }
  for (int i = -gx; i < nx + gx; ++i) {
    for (int k = 0; k < gy; ++k) {
      f.set(i, -1 - k,
            ghost_value(bc.bottom, f.get(i, k), f.get(i, 0), f.get(i, ny - 1 - k), 2, gas));
      f.set(i, ny + k,
            ghost_value(bc.top, f.get(i, ny - 1 - k), f.get(i, ny - 1), f.get(i, k), 2, gas));
    }
  }
}

double stable_dt(const Field& f, const GasModel& gas, double cfl) {
  const Grid& g = f.grid();
  double best = INFINITY;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      Vec4 w = f.get(i, j);
      if (!admissible(w, gas.gamma)) {
        std::ostringstream os;
        os << "inadmissible state at cell (" << i << ", " << j << ")";
        throw AdmissibilityError(os.str(), i, j);
      }
      double u = w[1] / w[0], v = w[2] / w[0];
      double c = std::sqrt(gas.gamma * pressure(w, gas.gamma) / w[0]);
      double s = g.dx / (std::fabs(u) + c);
      if (g.dims() == 2) s = std::min(s, g.dy / (std::fabs(v) + c));
      best = std::min(best, s);
    }
  }
  return cfl * best;
}

SourceTerms source_terms(const Vec4& w, const Vec4& L, const SourceModel& src) {
  SourceTerms s{};
  if (src.kind == SourceKind::gravity) {
    s.s = {0.0, 0.0, src.g * w[0], src.g * w[2]};
    s.st = {0.0, 0.0, src.g * L[0], src.g * L[2]};
  }
  return s;
}

namespace {

struct RowData {
  Vec4 wl, wr, dl, dr, s1, cl, cr, mid;
  bool fallback;
  bool forced;  // first order imposed by the cell mask
};

inline Vec4 sub_frame_y(const Vec4& w) { return {w[0], w[2], -w[1], w[3]}; }
inline Vec4 back_frame_y(const Vec4& f) { return {f[0], -f[2], f[1], f[3]}; }

struct Ctx {
  const ReconConfig* recon;
  const CollisionTimeModel* tau;
  RelaxationForm form;
  double gamma, k, dt_step, horizon;
};

RowData make_row(const Vec4* cells, double h, const Ctx& c, bool forced) {
  RowData r;
  r.cl = cells[2];
  r.cr = cells[3];
  r.forced = forced;
  InterfaceValues iv;
  if (!forced) iv = reconstruct_interface(cells, *c.recon, c.gamma);
  if (!forced && admissible(iv.wl, c.gamma) && admissible(iv.wr, c.gamma)) {
    r.wl = iv.wl;
    r.wr = iv.wr;
    for (int m = 0; m < 4; ++m) {
      r.dl[m] = iv.dl[m] / h;
      r.dr[m] = iv.dr[m] / h;
    }
    r.fallback = false;
  } else {
    r.wl = r.cl;
    r.wr = r.cr;
    r.dl = {};
    r.dr = {};
    r.fallback = true;
  }
  r.s1 = equilibrium_slope(cells[1], cells[2], cells[3], cells[4], {}, h).s1;
  for (int m = 0; m < 4; ++m) r.mid[m] = 0.5 * (r.wl[m] + r.wr[m]);
  return r;
}

InterfaceFluxExpansion point_flux(const InterfaceReconstruction& rec, const Ctx& c) {
  return kinetic_flux(rec, c.dt_step, c.horizon, c.k, *c.tau, c.form);
}

InterfaceReconstruction first_order(const RowData& r) {
  InterfaceReconstruction rec{};
  rec.wl = r.cl;
  rec.wr = r.cr;
  return rec;
}

// Fluxes along one interface line.  rows[p] holds tangential position p-2.
// Writes F and dF/dt for positions 0..n-1 and returns the fallback count
// per position through `fb`.
void line_fluxes(const std::vector<RowData>& rows, int n, bool two_d, int gauss, double ht,
                 const Ctx& c, const WenoConfig& weno, Vec4* F, Vec4* Ft, std::uint8_t* fb) {
  for (int t = 0; t < n; ++t) {
    const int p = t + 2;
    const RowData& r = rows[p];
    int count = r.fallback ? 1 : 0;
    if (!two_d) {
      InterfaceReconstruction rec{};
      rec.wl = r.wl;
      rec.wr = r.wr;
      rec.dl_n = r.dl;
      rec.dr_n = r.dr;
      rec.d0_n = r.s1;
      auto e = point_flux(rec, c);
      F[t] = e.f0;
      Ft[t] = e.ft;
      fb[t] = static_cast<std::uint8_t>(count);
      continue;
    }
    if (gauss == 1) {
      InterfaceReconstruction rec{};
      rec.wl = r.wl;
      rec.wr = r.wr;
      rec.dl_n = r.dl;
      rec.dr_n = r.dr;
      rec.d0_n = r.s1;
      for (int m = 0; m < 4; ++m) {
        auto st = [&](Vec4 RowData::*f) {
          return Stencil5{(rows[p - 2].*f)[m], (rows[p - 1].*f)[m], (rows[p].*f)[m],
                          (rows[p + 1].*f)[m], (rows[p + 2].*f)[m]};
        };
        rec.dl_t[m] = quartic_slope_center(st(&RowData::wl)) / ht;
        rec.dr_t[m] = quartic_slope_center(st(&RowData::wr)) / ht;
        rec.d0_t[m] = quartic_slope_center(st(&RowData::mid)) / ht;
      }
      auto e = point_flux(rec, c);
      F[t] = e.f0;
      Ft[t] = e.ft;
      fb[t] = static_cast<std::uint8_t>(count);
      continue;
    }
    InterfaceReconstruction gm{}, gp{};
    for (int m = 0; m < 4; ++m) {
      auto st = [&](Vec4 RowData::*f) {
        return Stencil5{(rows[p - 2].*f)[m], (rows[p - 1].*f)[m], (rows[p].*f)[m],
                        (rows[p + 1].*f)[m], (rows[p + 2].*f)[m]};
      };
      GaussPair a = weno5_gauss(st(&RowData::wl), weno);
      gm.wl[m] = a.value_m;
      gp.wl[m] = a.value_p;
      gm.dl_t[m] = a.slope_m / ht;
      gp.dl_t[m] = a.slope_p / ht;
      a = weno5_gauss(st(&RowData::wr), weno);
      gm.wr[m] = a.value_m;
      gp.wr[m] = a.value_p;
      gm.dr_t[m] = a.slope_m / ht;
      gp.dr_t[m] = a.slope_p / ht;
      a = weno5_gauss(st(&RowData::dl), weno);
      gm.dl_n[m] = a.value_m;
      gp.dl_n[m] = a.value_p;
      a = weno5_gauss(st(&RowData::dr), weno);
      gm.dr_n[m] = a.value_m;
      gp.dr_n[m] = a.value_p;
      a = quartic_gauss(st(&RowData::s1));
      gm.d0_n[m] = a.value_m;
      gp.d0_n[m] = a.value_p;
      a = quartic_gauss(st(&RowData::mid));
      gm.d0_t[m] = a.slope_m / ht;
      gp.d0_t[m] = a.slope_p / ht;
    }
    for (InterfaceReconstruction* g : {&gm, &gp}) {
      if (r.forced || !admissible(g->wl, c.gamma) || !admissible(g->wr, c.gamma)) {
        *g = first_order(r);
        ++count;
      }
    }
    auto em = point_flux(gm, c);
    auto ep = point_flux(gp, c);
    for (int m = 0; m < 4; ++m) {
      F[t][m] = 0.5 * (em.f0[m] + ep.f0[m]);
      Ft[t][m] = 0.5 * (em.ft[m] + ep.ft[m]);
    }
    fb[t] = static_cast<std::uint8_t>(count);
  }
}

Vec4 edge_sum(const std::vector<Vec4>& v, std::size_t start, std::size_t stride, int n,
              double sign, double len) {
  Vec4 out{};
  std::vector<double> tmp(n);
  for (int m = 0; m < 4; ++m) {
    for (int k = 0; k < n; ++k) tmp[k] = v[start + stride * k][m];
    out[m] = sign * len * pairwise_sum(tmp.data(), n);
  }
  return out;
}

}  // namespace

void spatial_operator(const Field& f, const GasModel& gas, double dt_step, double horizon,
                      const SchemeConfig& cfg, const SourceModel& src, OperatorOutput& out,
                      bool track_cells, const std::vector<std::uint8_t>* first_order_cells) {
  const Grid& g = f.grid();
  auto masked = [&](int i, int j) {
    if (!first_order_cells || i < 0 || i >= g.nx || j < 0 || j >= g.ny) return false;
    return (*first_order_cells)[g.index(i, j)] != 0;
  };
  const int nx = g.nx, ny = g.ny;
  const bool two_d = g.dims() == 2;
  if (cfg.gauss_points != 1 && cfg.gauss_points != 2)
    throw std::invalid_argument("gauss_points must be 1 or 2");
  if (!(out.L.grid() == g)) out.L = Field(g);
  if (!(out.Lt.grid() == g)) out.Lt = Field(g);
  Ctx c{&cfg.recon, &cfg.tau, cfg.form, gas.gamma, gas.k_internal(), dt_step, horizon};
  const int workers = resolve_workers(cfg.workers);

  // x-interfaces: index I in [0, nx] sits between cells I-1 and I.
  const int nxi = nx + 1;
  std::vector<Vec4> fx(static_cast<std::size_t>(nxi) * ny), fxt(fx.size());
  std::vector<std::uint8_t> fbx(fx.size());
  const int lo = two_d ? -2 : 0, hi = two_d ? ny + 2 : ny;
  parallel_for(0, nxi, workers, [&](int i0, int i1) {
    std::vector<RowData> rows(ny + 4);
    std::vector<Vec4> F(ny), Ft(ny);
    std::vector<std::uint8_t> fb(ny);
    Vec4 cells[6];
    for (int I = i0; I < i1; ++I) {
      for (int j = lo; j < hi; ++j) {
        for (int k = 0; k < 6; ++k) cells[k] = f.get(I - 3 + k, j);
        rows[j + 2] = make_row(cells, g.dx, c, masked(I - 1, j) || masked(I, j));
      }
      line_fluxes(rows, ny, two_d, cfg.gauss_points, g.dy, c, cfg.recon.weno, F.data(), Ft.data(),
                  fb.data());
      for (int j = 0; j < ny; ++j) {
        std::size_t n = I + static_cast<std::size_t>(nxi) * j;
        fx[n] = F[j];
        fxt[n] = Ft[j];
        fbx[n] = fb[j];
      }
    }
  });

  // y-interfaces: index J in [0, ny] between rows J-1 and J.  The tangent
  // runs along -x, so line position t maps to column nx-1-t.
  std::vector<Vec4> fy, fyt;
  std::vector<std::uint8_t> fby;
  if (two_d) {
    const int nyi = ny + 1;
    fy.resize(static_cast<std::size_t>(nx) * nyi);
    fyt.resize(fy.size());
    fby.resize(fy.size());
    parallel_for(0, nyi, workers, [&](int j0, int j1) {
      std::vector<RowData> rows(nx + 4);
      std::vector<Vec4> F(nx), Ft(nx);
      std::vector<std::uint8_t> fb(nx);
      Vec4 cells[6];
      for (int J = j0; J < j1; ++J) {
        for (int p = 0; p < nx + 4; ++p) {
          int i = nx + 1 - p;
          for (int k = 0; k < 6; ++k) cells[k] = sub_frame_y(f.get(i, J - 3 + k));
          rows[p] = make_row(cells, g.dy, c, masked(i, J - 1) || masked(i, J));
        }
        line_fluxes(rows, nx, true, cfg.gauss_points, g.dx, c, cfg.recon.weno, F.data(),
                    Ft.data(), fb.data());
        for (int t = 0; t < nx; ++t) {
          int i = nx - 1 - t;
          std::size_t n = i + static_cast<std::size_t>(nx) * J;
          fy[n] = back_frame_y(F[t]);
          fyt[n] = back_frame_y(Ft[t]);
          fby[n] = fb[t];
        }
      }
    });
  }

  // Cell update.
  parallel_for(0, ny, workers, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < nx; ++i) {
        std::size_t a = i + static_cast<std::size_t>(nxi) * j;
        Vec4 L, Lt;
        for (int m = 0; m < 4; ++m) {
          double lx = (fx[a][m] - fx[a + 1][m]) / g.dx;
          double ltx = (fxt[a][m] - fxt[a + 1][m]) / g.dx;
          if (two_d) {
            std::size_t b = i + static_cast<std::size_t>(nx) * j;
            double ly = (fy[b][m] - fy[b + nx][m]) / g.dy;
            double lty = (fyt[b][m] - fyt[b + nx][m]) / g.dy;
            L[m] = lx + ly;
            Lt[m] = ltx + lty;
          } else {
            L[m] = lx;
            Lt[m] = ltx;
          }
        }
        if (src.kind != SourceKind::none) {
          Vec4 w = f.get(i, j);
          SourceTerms s0 = source_terms(w, {}, src);
          for (int m = 0; m < 4; ++m) L[m] += s0.s[m];
          SourceTerms s1 = source_terms(w, L, src);
          for (int m = 0; m < 4; ++m) Lt[m] += s1.st[m];
        }
        out.L.set(i, j, L);
        out.Lt.set(i, j, Lt);
      }
    }
  });

  // Boundary fluxes, outward positive.
  const double ly = two_d ? g.dy : 1.0;
  out.edge_flux[kLeft] = edge_sum(fx, 0, nxi, ny, -1.0, ly);
  out.edge_flux_t[kLeft] = edge_sum(fxt, 0, nxi, ny, -1.0, ly);
  out.edge_flux[kRight] = edge_sum(fx, nx, nxi, ny, 1.0, ly);
  out.edge_flux_t[kRight] = edge_sum(fxt, nx, nxi, ny, 1.0, ly);
  if (two_d) {
    out.edge_flux[kBottom] = edge_sum(fy, 0, 1, nx, -1.0, g.dx);
    out.edge_flux_t[kBottom] = edge_sum(fyt, 0, 1, nx, -1.0, g.dx);
    out.edge_flux[kTop] = edge_sum(fy, static_cast<std::size_t>(nx) * ny, 1, nx, 1.0, g.dx);
    out.edge_flux_t[kTop] = edge_sum(fyt, static_cast<std::size_t>(nx) * ny, 1, nx, 1.0, g.dx);
  } else {
    out.edge_flux[kBottom] = out.edge_flux[kTop] = {};
    out.edge_flux_t[kBottom] = out.edge_flux_t[kTop] = {};
  }

  std::int64_t total = 0;
  for (auto v : fbx) total += v;
  for (auto v : fby) total += v;
  out.fallbacks = total;
  if (track_cells) {
    out.fallback_cells.assign(g.size(), 0);
    for (int j = 0; j < ny; ++j)
      for (int I = 0; I < nxi; ++I) {
        std::uint8_t v = fbx[I + static_cast<std::size_t>(nxi) * j];
        if (!v) continue;
        if (I > 0) out.fallback_cells[g.index(I - 1, j)] += v;
        if (I < nx) out.fallback_cells[g.index(I, j)] += v;
      }
    if (two_d)
      for (int J = 0; J <= ny; ++J)
        for (int i = 0; i < nx; ++i) {
          std::uint8_t v = fby[i + static_cast<std::size_t>(nx) * J];
          if (!v) continue;
          if (J > 0) out.fallback_cells[g.index(i, J - 1)] += v;
          if (J < ny) out.fallback_cells[g.index(i, J)] += v;
        }
  }
}

Solver::Solver(Field init, GasModel gas, BoundaryCondition bc, SourceModel src, SchemeConfig cfg,
               double t0)
    : w_(std::move(init)), ws_(w_.grid()), gas_(gas), bc_(bc), src_(src), cfg_(cfg), t_(t0) {
  bc_.validate();
  if (!(cfg_.cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  check(w_, "initial");
  fill_ghosts(w_, bc_, gas_);
}

void Solver::set_track_fallback_cells(bool on) {
  track_cells_ = on;
  if (on) stats_.fallback_cells.assign(w_.grid().size(), 0);
}

double Solver::stable_dt() const { return ebench::stable_dt(w_, gas_, cfg_.cfl); }

void Solver::check(const Field& f, const char* what) const {
  const Grid& g = f.grid();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      Vec4 w = f.get(i, j);
      if (!admissible(w, gas_.gamma)) {
        std::ostringstream os;
        os << what << " state inadmissible at cell (" << i << ", " << j << "), t = " << t_;
        throw StepFailure(os.str(), i, j, t_);
      }
    }
}

std::vector<std::size_t> Solver::bad_cells(const Field& f) const {
  const Grid& g = f.grid();
  std::vector<std::size_t> out;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (!admissible(f.get(i, j), gas_.gamma)) out.push_back(g.index(i, j));
  return out;
}

std::vector<std::size_t> Solver::try_step(double dt, const std::vector<std::uint8_t>* mask,
                                          Field& next, const char** stage) {
  const Grid& g = w_.grid();
  spatial_operator(w_, gas_, dt, dt, cfg_, src_, op0_, track_cells_, mask);
  for (int k = 0; k < 4; ++k) {
    const double* w = w_.comp(k);
    double* s = ws_.comp(k);
    const double* L = op0_.L.comp(k);
    const double* Lt = op0_.Lt.comp(k);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        std::size_t n = g.index(i, j);
        s[n] = s2o4_stage(w[n], L[n], Lt[n], dt);
      }
  }
  *stage = "intermediate";
  auto bad = bad_cells(ws_);
  if (!bad.empty()) return bad;
  fill_ghosts(ws_, bc_, gas_);
  const double h2 = cfg_.stage_horizon == StageHorizon::full ? dt : 0.5 * dt;
  spatial_operator(ws_, gas_, dt, h2, cfg_, src_, op1_, track_cells_, mask);

  next = w_;
  for (int k = 0; k < 4; ++k) {
    const double* w = w_.comp(k);
    double* o = next.comp(k);
    const double* L = op0_.L.comp(k);
    const double* Lt0 = op0_.Lt.comp(k);
    const double* Lt1 = op1_.Lt.comp(k);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        std::size_t n = g.index(i, j);
        o[n] = s2o4_final(w[n], L[n], Lt0[n], Lt1[n], dt);
      }
  }
  *stage = "final";
  return bad_cells(next);
}

void Solver::step(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  constexpr int kMaxRedo = 4;
  const Grid& g = w_.grid();
  std::vector<std::uint8_t> mask;
  Field next(g);
  const char* stage = "";
  for (int attempt = 0;; ++attempt) {
    auto bad = try_step(dt, mask.empty() ? nullptr : &mask, next, &stage);
    if (bad.empty()) break;
    if (attempt == kMaxRedo) {
      const int i = static_cast<int>(bad.front() % g.stride()) - g.gx();
      const int j = static_cast<int>(bad.front() / g.stride()) - g.gy();
      std::ostringstream os;
      os << stage << " state inadmissible at cell (" << i << ", " << j << "), t = " << t_;
      throw StepFailure(os.str(), i, j, t_);
    }
    // Flag the offending cells; on repeats also their neighbours.
    if (mask.empty()) mask.assign(g.size(), 0);
    std::vector<std::uint8_t> grown = mask;
    for (std::size_t n : bad) {
      const int i = static_cast<int>(n % g.stride()) - g.gx();
      const int j = static_cast<int>(n / g.stride()) - g.gy();
      grown[n] = 1;
      if (attempt == 0) continue;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int a = i + di, b = j + dj;
          if (a >= 0 && a < g.nx && b >= 0 && b < g.ny) grown[g.index(a, b)] = 1;
        }
    }
    mask = std::move(grown);
  }
  if (!mask.empty()) ++stats_.redone_steps;
  fill_ghosts(next, bc_, gas_);
  w_ = std::move(next);
  t_ += dt;

  ++stats_.steps;
  stats_.fallbacks += op0_.fallbacks + op1_.fallbacks;
  const double c6 = dt * dt / 6.0;
  for (int m = 0; m < 4; ++m) {
    double b = 0.0, bt0 = 0.0, bt1 = 0.0;
    for (int e = 0; e < 4; ++e) {
      b += op0_.edge_flux[e][m];
      bt0 += op0_.edge_flux_t[e][m];
      bt1 += op1_.edge_flux_t[e][m];
    }
    stats_.boundary_outflow[m] += dt * b + c6 * (bt0 + 2.0 * bt1);
  }
  if (track_cells_) {
    for (std::size_t n = 0; n < stats_.fallback_cells.size(); ++n)
      stats_.fallback_cells[n] += op0_.fallback_cells[n] + op1_.fallback_cells[n];
  }
}

void Solver::advance_to(double t_end, const std::function<void(const Solver&)>& on_step) {
  while (t_ < t_end) {
    double dt = stable_dt();
    bool last = false;
    if (t_ + dt >= t_end) {
      dt = t_end - t_;
      last = true;
    }
    step(dt);
    if (last) t_ = t_end;
    if (on_step) on_step(*this);
  }
}

}  // namespace ebench
