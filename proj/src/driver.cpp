#include "ebench/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ebench/diagnostics.hpp"
#include "json.hpp"

namespace ebench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string recon_name(ReconMode m) {
  return m == ReconMode::characteristic ? "char" : "comp";
}

std::string relax_name(RelaxationForm f) {
  return f == RelaxationForm::euler ? "euler" : "single-tau";
}

std::string format_name(FieldFormat f) { return f == FieldFormat::csv ? "csv" : "bin"; }

std::string times_text(const std::vector<double>& v) {
  std::string s;
  for (double t : v) s += (s.empty() ? "" : ",") + num(t);
  return s;
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["case"] = c.case_id;
  j["cells"] = c.cells;
  j["mesh_inverse_spacing"] = c.inv_h;
  j["weno"] = to_string(c.weno);
  j["lambda"] = c.lambda_rule;
  j["weno_eps"] = c.weno_eps;
  j["recon"] = c.recon ? nlohmann::json(recon_name(*c.recon)) : nlohmann::json(nullptr);
  j["cfl"] = c.cfl;
  j["t_end"] = c.t_end ? nlohmann::json(*c.t_end) : nlohmann::json(nullptr);
  j["output_times"] = c.output_times;
  j["out"] = c.out_dir.string();
  j["threads"] = c.threads;
  j["tau_eps"] = c.tau_eps;
  j["tau_c"] = c.tau_c;
  j["format"] = format_name(c.format);
  j["gauss"] = c.gauss_points;
  j["relaxation"] = relax_name(c.relaxation);
  j["stage_horizon"] = c.stage_horizon == StageHorizon::full ? "full" : "half";
  return j;
}

bool is_ldr(const CaseSpec& c) { return c.name.rfind("large-density-ratio", 0) == 0; }

RiemannSolution1D ldr_solution(const CaseSpec& c) {
  auto it = c.params.find("reading");
  return large_density_ratio_solution(c.name == "large-density-ratio-mild",
                                      it != c.params.end() && it->second == "caption");
}

void record_diagnostics(DiagnosticsStream& ds, const CaseSpec& c, const Solver& s,
                        const Totals& initial) {
  const Field& f = s.field();
  const double t = s.time();
  for (const auto& kind : c.diagnostics) {
    if (kind == "min-density") {
      ds.record(kind, {"min_rho"}, t, {min_density(f)});
    } else if (kind == "symmetry-rot90") {
      ds.record(kind, {"error"}, t, {rotation_symmetry_error(f)});
    } else if (kind == "symmetry-diag") {
      ds.record(kind, {"error"}, t, {diagonal_symmetry_error(f)});
    } else if (kind == "total-conservation") {
      ConservationDrift d = conservation_drift(initial, f, s.stats().boundary_outflow);
      ds.record(kind, {"mass", "mx", "my", "energy", "max_rel_drift"}, t,
                {d.current[0], d.current[1], d.current[2], d.current[3], d.max_relative()});
    } else if (kind == "oracle-L1-error") {
      if (t <= 0.0) continue;
      OracleError e = c.name == "hurricane-critical"
                          ? hurricane_near_field_error(f, c, t)
                          : density_l1_error(f, oracle_averages(c, f.grid(), t));
      ds.record(kind, {"rel_l1", "mean_abs", "cells"}, t,
                {e.relative_l1, e.mean_abs, static_cast<double>(e.cells)});
    } else if (kind == "oscillation") {
      ds.record(kind, {"density_tv"}, t, {density_variation(f)});
    } else if (kind == "wave-positions" && is_ldr(c)) {
      RiemannSolution1D sol = ldr_solution(c);
      WavePositions w = locate_waves(f, sol.right.rho, sol.rho_star_r, sol.rho_star_l);
      ds.record(kind, {"shock", "contact", "post_shock_rho", "shock_exact", "contact_exact"}, t,
                {w.shock, w.contact, w.post_shock_density, c.xc + t * sol.right_head(),
                 c.xc + t * sol.contact()});
    } else if (kind == "mixing-width") {
      ds.record(kind, {"width"}, t, {mixing_width(f)});
    } else if (kind == "pyramid-min-density") {
      if (t <= 0.0) continue;
      PyramidDiag p = pyramid_min_density(f, c, t);
      ds.record(kind, {"min_rho", "cells"}, t, {p.min_density, static_cast<double>(p.cells)});
    } else if (kind == "far-quadrant-density") {
      ds.record(kind, {"max_rel_error"}, t, {far_quadrant_density_error(f, c)});
    } else if (kind == "pless-classification") {
      if (t <= 0.0) continue;
      ds.record(kind, {"agreement"}, t, {pressureless_agreement(f, c, t)});
    } else if (kind == "shock-indicator") {
      ds.record(kind, {"max_rel_pressure_jump"}, t, {shock_indicator(f, s.gas())});
    } else if (kind == "fallback-quadrant1") {
      ds.record(kind, {"count"}, t,
                {static_cast<double>(
                    fallbacks_in_quadrant1(s.stats().fallback_cells, f.grid(), c.xc, c.yc))});
    }
  }
}

}  // namespace

std::string to_string(WenoVariant v) {
  switch (v) {
    case WenoVariant::js: return "js";
    case WenoVariant::z: return "z";
    case WenoVariant::zplus: return "z+";
  }
  return "js";
}

WenoVariant weno_from_string(const std::string& s) {
  if (s == "js") return WenoVariant::js;
  if (s == "z") return WenoVariant::z;
  if (s == "z+" || s == "zplus") return WenoVariant::zplus;
  throw std::invalid_argument("unknown WENO variant '" + s + "' (js, z, z+)");
}

double lambda_from_rule(const std::string& rule, double dx) {
  if (rule.rfind("dx^", 0) == 0) {
    std::size_t pos = 0;
    double a = 0.0;
    try {
      a = std::stod(rule.substr(3), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != rule.size() - 3)
      throw std::invalid_argument("bad lambda rule '" + rule + "'");
    return std::pow(dx, a);
  }
  if (rule == "dx") return dx;
  try {
    std::size_t pos = 0;
    double v = std::stod(rule, &pos);
    if (pos == rule.size() && v >= 0.0) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("bad lambda rule '" + rule + "' (use dx^<a> or a number >= 0)");
}

Grid run_grid(const CaseSpec& c, const RunConfig& cfg) {
  if (cfg.cells < 0 || cfg.inv_h < 0.0) throw std::invalid_argument("mesh must be positive");
  if (cfg.cells > 0 && cfg.inv_h > 0.0)
    throw std::invalid_argument("--cells and --mesh are mutually exclusive");
  if (cfg.inv_h > 0.0) return c.grid_for_spacing(cfg.inv_h);
  if (cfg.cells > 0) {
    int ny = c.dimension == 2
                 ? std::max(1, static_cast<int>(std::lround(cfg.cells * (c.y1 - c.y0) / (c.x1 - c.x0))))
                 : 1;
    return c.grid(cfg.cells, ny);
  }
  return c.grid();
}

SchemeConfig scheme_config(const RunConfig& cfg, const CaseSpec& c, const Grid& g) {
  if (!(cfg.cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  if (!(cfg.weno_eps > 0.0)) throw std::invalid_argument("WENO epsilon must be positive");
  if (cfg.tau_eps < 0.0 || cfg.tau_c < 0.0) throw std::invalid_argument("tau parameters must be >= 0");
  if (cfg.gauss_points != 1 && cfg.gauss_points != 2)
    throw std::invalid_argument("--gauss must be 1 or 2");
  if (cfg.threads < 0) throw std::invalid_argument("--threads must be >= 0");
  SchemeConfig s;
  s.recon.mode = cfg.recon.value_or(c.recon);
  s.recon.weno.variant = cfg.weno;
  s.recon.weno.epsilon = cfg.weno_eps;
  s.recon.weno.lambda = lambda_from_rule(cfg.lambda_rule, std::min(g.dx, g.dims() == 2 ? g.dy : g.dx));
  s.tau.eps_base = cfg.tau_eps;
  s.tau.c_jump = cfg.tau_c;
  s.form = cfg.relaxation;
  s.gauss_points = cfg.gauss_points;
  s.stage_horizon = cfg.stage_horizon;
  s.cfl = cfg.cfl;
  s.workers = cfg.threads;
  return s;
}

CaseSpec configured_case(const RunConfig& cfg) {
  CaseSpec c = make_case(cfg.case_id);
  if (cfg.t_end) {
    if (!(*cfg.t_end > c.t_start)) throw std::invalid_argument("t_end must exceed the start time");
    c.t_end = *cfg.t_end;
    c.output_times = {c.t_end};
  }
  if (!cfg.output_times.empty()) c.output_times = cfg.output_times;
  std::sort(c.output_times.begin(), c.output_times.end());
  for (double t : c.output_times)
    if (!(t > c.t_start)) throw std::invalid_argument("output times must exceed the start time");
  if (c.output_times.empty()) c.output_times = {c.t_end};
  c.t_end = c.output_times.back();
  return c;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["config"] = config_json(config);
  j["case_id"] = case_id;
  j["grid"] = {{"nx", nx}, {"ny", ny}};
  j["versions"] = {{"euler_bench", kVersion},
                   {"compiler", __VERSION__},
                   {"cplusplus", static_cast<long>(__cplusplus)}};
  j["wall_seconds"] = wall_seconds;
  j["steps"] = steps;
  j["fallbacks"] = fallbacks;
  j["redone_steps"] = redone_steps;
  j["conservation_drift"] = {{"mass", conservation_drift[0]},
                             {"mx", conservation_drift[1]},
                             {"my", conservation_drift[2]},
                             {"energy", conservation_drift[3]}};
  j["checksums"] = checksums;
  j["t_final"] = t_final;
  if (failure)
    j["failure"] = {{"message", failure->message},
                    {"t", failure->t},
                    {"cell", {failure->i, failure->j}}};
  else
    j["failure"] = nullptr;
  return j.dump(2) + "\n";
}

RunManifest run(const RunConfig& cfg, std::ostream* log) {
  auto t_setup = Clock::now();
  CaseSpec c = configured_case(cfg);
  Grid g = run_grid(c, cfg);
  SchemeConfig scheme = scheme_config(cfg, c, g);
  GasModel gas(c.gamma);

  RunManifest m;
  m.config = cfg;
  m.config.recon = scheme.recon.mode;
  m.case_id = c.id();
  m.nx = g.nx;
  m.ny = g.ny;

  Field init = initial_field(c, g);
  Totals initial = field_totals(init);
  Solver solver(std::move(init), gas, c.bc, c.source, scheme, c.t_start);
  const bool track = std::find(c.diagnostics.begin(), c.diagnostics.end(), "fallback-quadrant1") !=
                     c.diagnostics.end();
  solver.set_track_fallback_cells(track);
  DiagnosticsStream ds(cfg.out_dir);
  record_diagnostics(ds, c, solver, initial);
  m.wall_seconds["setup"] = seconds_since(t_setup);

  const std::string ext = cfg.format == FieldFormat::csv ? ".csv" : ".bin";
  double advance = 0.0, output = 0.0;
  auto write_snapshot = [&](const std::string& stem) {
    auto t0 = Clock::now();
    std::string name = stem + ext;
    write_field(snapshot(solver.field(), gas, c.id(), solver.time()), cfg.out_dir / name,
                cfg.format);
    m.checksums[name] = sha256_file(cfg.out_dir / name);
    output += seconds_since(t0);
  };

  for (double t_out : c.output_times) {
    auto t0 = Clock::now();
    try {
      solver.advance_to(t_out);
    } catch (const AdmissibilityError& e) {
      advance += seconds_since(t0);
      m.failure = FailureRecord{e.what(), solver.time(), e.i, e.j};
      if (log) *log << "step failure: " << e.what() << "\n";
      write_snapshot("field_last_good_t" + short_num(solver.time()));
      break;
    }
    advance += seconds_since(t0);
    if (log)
      *log << c.id() << ": t=" << short_num(solver.time()) << " steps=" << solver.stats().steps
           << "\n";
    write_snapshot("field_t" + short_num(t_out));
    auto t1 = Clock::now();
    record_diagnostics(ds, c, solver, initial);
    output += seconds_since(t1);
  }

  m.wall_seconds["advance"] = advance;
  m.wall_seconds["output"] = output;
  m.steps = solver.stats().steps;
  m.fallbacks = solver.stats().fallbacks;
  m.redone_steps = solver.stats().redone_steps;
  m.t_final = solver.time();
  m.conservation_drift =
      conservation_drift(initial, solver.field(), solver.stats().boundary_outflow).relative;
  for (const auto& p : ds.files()) m.checksums[p.filename().string()] = sha256_file(p);
  write_atomic(cfg.out_dir / "manifest.json", m.to_json());
  return m;
}

std::vector<std::string> oracle_cases() {
  std::vector<std::string> out;
  for (const char* n : {"large-density-ratio", "large-density-ratio-mild", "hurricane-critical",
                        "isentropic-vortex", "shock-tube"})
    out.emplace_back(n);
  return out;
}

FieldFile emit_reference(const RunConfig& cfg, double t, const std::filesystem::path& path) {
  CaseSpec c = make_case(cfg.case_id);
  if (!c.has_oracle()) {
    std::string list;
    for (const auto& n : oracle_cases()) list += (list.empty() ? "" : ", ") + n;
    throw std::invalid_argument(c.id() + " has no reference solution; oracle-backed cases: " + list);
  }
  if (!(t > 0.0)) throw std::invalid_argument("reference time must be positive");
  Grid g = run_grid(c, cfg);
  FieldFile f = snapshot_primitive(sample_oracle(c, g, t), c.gamma, c.id(), t);
  write_field(f, path, cfg.format);
  return f;
}

std::vector<ConvergenceRow> convergence(const RunConfig& cfg, const std::vector<int>& meshes,
                                        std::ostream* log) {
  CaseSpec c = configured_case(cfg);
  if (!c.has_oracle()) throw std::invalid_argument(c.id() + " has no reference solution");
  std::vector<ConvergenceRow> rows;
  for (int n : meshes) {
    RunConfig rc = cfg;
    rc.cells = n;
    rc.inv_h = 0.0;
    Grid g = run_grid(c, rc);
    Solver s(initial_field(c, g), GasModel(c.gamma), c.bc, c.source, scheme_config(rc, c, g),
             c.t_start);
    s.advance_to(c.t_end);
    ConvergenceRow r;
    r.nx = g.nx;
    r.error = density_l1_error(s.field(), oracle_averages(c, g, c.t_end)).relative_l1;
    if (!rows.empty())
      r.order = std::log(rows.back().error / r.error) /
                std::log(static_cast<double>(r.nx) / rows.back().nx);
    rows.push_back(r);
    if (log) *log << "nx=" << r.nx << " L1=" << r.error << " order=" << r.order << "\n";
  }
  return rows;
}

std::string config_text(const RunConfig& c) {
  std::ostringstream os;
  os << "case=" << c.case_id << "\n";
  if (c.cells > 0) os << "cells=" << c.cells << "\n";
  if (c.inv_h > 0.0) os << "mesh=1/" << num(c.inv_h) << "\n";
  os << "weno=" << to_string(c.weno) << "\n";
  os << "lambda=" << c.lambda_rule << "\n";
  os << "weno-eps=" << num(c.weno_eps) << "\n";
  if (c.recon) os << "recon=" << recon_name(*c.recon) << "\n";
  os << "cfl=" << num(c.cfl) << "\n";
  if (c.t_end) os << "t-end=" << num(*c.t_end) << "\n";
  if (!c.output_times.empty()) os << "output-times=" << times_text(c.output_times) << "\n";
  os << "out=" << c.out_dir.string() << "\n";
  os << "threads=" << c.threads << "\n";
  os << "tau-eps=" << num(c.tau_eps) << "\n";
  os << "tau-c=" << num(c.tau_c) << "\n";
  os << "format=" << format_name(c.format) << "\n";
  os << "gauss=" << c.gauss_points << "\n";
  os << "relaxation=" << relax_name(c.relaxation) << "\n";
  os << "stage-horizon=" << (c.stage_horizon == StageHorizon::full ? "full" : "half") << "\n";
  return os.str();
}

}  // namespace ebench

namespace ebench {

namespace {

std::string strip(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  double d = to_double(key, v);
  if (d != std::floor(d)) throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
  return static_cast<int>(d);
}

}  // namespace

void apply_config_entry(RunConfig& c, const std::string& key, const std::string& value) {
  const std::string v = strip(value);
  if (key == "case") {
    c.case_id = v;
  } else if (key == "cells") {
    c.cells = to_int(key, v);
    if (c.cells <= 0) throw std::invalid_argument("cells must be positive");
  } else if (key == "mesh") {
    if (v.rfind("1/", 0) != 0) throw std::invalid_argument("mesh must be written 1/N");
    c.inv_h = to_double(key, v.substr(2));
    if (!(c.inv_h > 0.0)) throw std::invalid_argument("mesh must be 1/N with N > 0");
  } else if (key == "weno") {
    c.weno = weno_from_string(v);
  } else if (key == "lambda") {
    lambda_from_rule(v, 0.01);
    c.lambda_rule = v;
  } else if (key == "weno-eps") {
    c.weno_eps = to_double(key, v);
  } else if (key == "recon") {
    if (v == "char" || v == "characteristic")
      c.recon = ReconMode::characteristic;
    else if (v == "comp" || v == "componentwise")
      c.recon = ReconMode::componentwise;
    else
      throw std::invalid_argument("recon must be char or comp");
  } else if (key == "cfl") {
    c.cfl = to_double(key, v);
  } else if (key == "t-end") {
    c.t_end = to_double(key, v);
  } else if (key == "output-times") {
    c.output_times.clear();
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) c.output_times.push_back(to_double(key, strip(item)));
  } else if (key == "out") {
    c.out_dir = v;
  } else if (key == "threads") {
    c.threads = to_int(key, v);
  } else if (key == "tau-eps") {
    c.tau_eps = to_double(key, v);
  } else if (key == "tau-c") {
    c.tau_c = to_double(key, v);
  } else if (key == "format") {
    if (v == "csv")
      c.format = FieldFormat::csv;
    else if (v == "bin" || v == "binary")
      c.format = FieldFormat::binary;
    else
      throw std::invalid_argument("format must be csv or bin");
  } else if (key == "gauss") {
    c.gauss_points = to_int(key, v);
    if (c.gauss_points != 1 && c.gauss_points != 2) throw std::invalid_argument("gauss must be 1 or 2");
  } else if (key == "relaxation") {
    if (v == "euler")
      c.relaxation = RelaxationForm::euler;
    else if (v == "single-tau")
      c.relaxation = RelaxationForm::single_tau;
    else
      throw std::invalid_argument("relaxation must be euler or single-tau");
  } else if (key == "stage-horizon") {
    if (v == "full")
      c.stage_horizon = StageHorizon::full;
    else if (v == "half")
      c.stage_horizon = StageHorizon::half;
    else
      throw std::invalid_argument("stage-horizon must be full or half");
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void apply_config_text(RunConfig& c, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    apply_config_entry(c, strip(line.substr(0, eq)), line.substr(eq + 1));
  }
}

}  // namespace ebench
