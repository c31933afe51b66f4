#include "ebench/cases.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ebench {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char b2[64];
    std::snprintf(b2, sizeof b2, "%.*g", prec, v);
    if (std::strtod(b2, nullptr) == v) return b2;
  }
  return buf;
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number for " + what + ": '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Quadrant of (x, y) relative to the corner, counterclockwise from the upper
// right; points on the dividing lines belong to the lower/left quadrant.
int quadrant_of(double x, double y, double xc, double yc) {
  const bool right = x > xc, up = y > yc;
  if (right && up) return 0;
  if (!right && up) return 1;
  if (!right && !up) return 2;
  return 3;
}

void set_quadrants(CaseSpec& c, const std::array<PrimitiveState, 4>& q, double xc, double yc) {
  c.quadrants = q;
  c.xc = xc;
  c.yc = yc;
  c.ic = [q, xc, yc](double x, double y) { return q[quadrant_of(x, y, xc, yc)]; };
}

CaseSpec base_2d_riemann(const std::string& name) {
  CaseSpec c;
  c.name = name;
  c.dimension = 2;
  c.x0 = 0.0;
  c.x1 = 1.0;
  c.y0 = 0.0;
  c.y1 = 1.0;
  c.gamma = 1.4;
  c.bc = BoundaryCondition::all(BoundaryKind::outflow);
  c.averaging = IcAveraging::center;
  c.nx = c.ny = 400;
  return c;
}

CaseSpec titarev_toro() {
  CaseSpec c;
  c.name = "titarev-toro";
  c.dimension = 1;
  c.x0 = -5.0;
  c.x1 = 5.0;
  c.gamma = 1.4;
  c.ic = [](double x, double) -> PrimitiveState {
    if (x <= -4.5) return {1.515695, 0.523346, 0.0, 1.805};
    return {1.0 + 0.1 * std::sin(20.0 * kPi * x), 0.0, 0.0, 1.0};
  };
  c.averaging = IcAveraging::gauss;
  c.averaging_points = 5;
  c.bc = BoundaryCondition::all(BoundaryKind::outflow);
  c.t_end = 5.0;
  c.nx = 1000;
  c.ny = 1;
  c.output_times = {5.0};
  c.diagnostics = {"line-profile", "oscillation", "total-conservation"};
  return c;
}

CaseSpec large_density_ratio(bool mild, bool caption) {
  CaseSpec c;
  c.name = mild ? "large-density-ratio-mild" : "large-density-ratio";
  if (caption) c.params["reading"] = "caption";
  c.dimension = 1;
  // The waves travel about 55 length units by t = 12; the jump sits at 30%
  // of an enlarged domain so that all fronts stay interior.
  c.x0 = 0.0;
  c.x1 = 100.0;
  c.gamma = 1.4;
  const double xj = 30.0;
  c.xc = xj;
  RiemannSolution1D sol = large_density_ratio_solution(mild, caption);
  c.t_start = 1.2;
  c.t_end = 12.0;
  c.ic = [sol, xj](double x, double) { return sol.sample((x - xj) / 1.2); };
  c.oracle = [sol, xj](double x, double, double t) { return sol.sample((x - xj) / t); };
  c.averaging = IcAveraging::subsample;
  c.averaging_points = 64;
  c.bc = BoundaryCondition::all(BoundaryKind::outflow);
  c.nx = 200;
  c.ny = 1;
  c.output_times = {12.0};
  c.diagnostics = {"line-profile", "oracle-L1-error", "wave-positions", "total-conservation"};
  c.notes = "artifact-chosen: domain [0,100] with the jump at x=30; initialized from the exact solution at t=1.2";
  return c;
}

CaseSpec hurricane(const std::string& regime) {
  CaseSpec c;
  c.name = "hurricane-" + regime;
  HurricaneParams h = hurricane_params(regime);
  c.dimension = 2;
  c.x0 = c.y0 = -1.0;
  c.x1 = c.y1 = 1.0;
  c.gamma = h.gamma;
  c.ic = [h](double x, double y) { return hurricane_initial(h, x, y); };
  c.averaging = IcAveraging::center;
  c.bc = BoundaryCondition::all(BoundaryKind::outflow);
  c.t_end = regime == "high" ? 0.08 : 0.1;
  c.nx = c.ny = 200;
  // Characteristic projection with Roe averages breaks down in the emerging
  // vacuum of the critical regime; conserved variables stay admissible.
  c.recon = ReconMode::componentwise;
  c.output_times = {c.t_end};
  c.diagnostics = {"min-density", "symmetry-rot90", "total-conservation"};
  if (h.critical()) {
    c.oracle = [h](double x, double y, double t) { return hurricane_exact(h, x, y, t); };
    c.diagnostics.push_back("oracle-L1-error");
  }
  c.notes = "artifact-chosen: domain [-1,1]^2, t_end 0.1 (0.08 for the high-speed regime)";
  return c;
}

const std::vector<double> kSameP0 = {1.0, 0.5, 0.25, 0.15, 0.1};
const std::vector<double> kOppositeP0 = {1.0, 0.75, 0.5, 0.3, 0.2};

CaseSpec vortex_sheets(SheetSign sign, const std::map<std::string, std::string>& params) {
  const bool same = sign == SheetSign::same;
  CaseSpec c = base_2d_riemann(same ? "vortex-sheets-same" : "vortex-sheets-opposite");
  const auto& allowed = same ? kSameP0 : kOppositeP0;
  std::string list;
  for (double v : allowed) list += (list.empty() ? "" : ", ") + fmt_num(v);
  auto it = params.find("p0");
  if (it == params.end()) throw std::invalid_argument(c.name + " needs p0 (one of " + list + ")");
  double p0 = parse_num(it->second, "p0");
  bool ok = false;
  for (double v : allowed) ok = ok || std::fabs(v - p0) < 1e-12;
  if (!ok) throw std::invalid_argument(c.name + ": p0 must be one of " + list);
  c.params["p0"] = fmt_num(p0);
  auto q = vortex_sheet_corners(sign);
  std::array<PrimitiveState, 4> s;
  for (int k = 0; k < 4; ++k) s[k] = {q[k].rho, q[k].u, q[k].v, p0};
  set_quadrants(c, s, 0.5, 0.5);
  if (same) {
    c.t_end = 0.35;
    c.nx = c.ny = p0 >= 0.25 ? 1500 : 400;
    c.diagnostics = {"min-density", "pyramid-min-density", "far-quadrant-density"};
  } else {
    c.t_end = std::fabs(p0 - 0.2) < 1e-12 ? 0.28 : 0.25;
    c.nx = c.ny = 1500;
    c.diagnostics = {"min-density", "pless-classification"};
  }
  c.output_times = {c.t_end};
  return c;
}

CaseSpec rarefaction(bool strong) {
  CaseSpec c = base_2d_riemann(strong ? "rarefaction-strong" : "rarefaction-weak");
  std::array<PrimitiveState, 4> q;
  if (strong)
    q = {PrimitiveState{1.0, 0.6233, 0.6233, 1.5}, {0.389, -0.6233, 0.6233, 0.4},
         {1.0, -0.6233, -0.6233, 1.5}, {0.389, 0.6233, -0.6233, 0.4}};
  else
    q = {PrimitiveState{1.0, 0.0312, 0.0312, 0.5}, {0.927, -0.0312, 0.0312, 0.45},
         {1.0, -0.0312, -0.0312, 0.5}, {0.927, 0.0312, -0.0312, 0.45}};
  set_quadrants(c, q, 0.5, 0.5);
  c.t_end = 0.3;
  c.output_times = {0.3};
  c.diagnostics = {"min-density", "shock-indicator", "symmetry-diag"};
  c.notes = "artifact-chosen: t_end 0.3";
  return c;
}

CaseSpec four_shocks() {
  CaseSpec c = base_2d_riemann("four-shocks");
  std::array<PrimitiveState, 4> q = {PrimitiveState{1.5, 0.0, 0.0, 1.5},
                                     {0.5323, 1.206, 0.0, 0.3},
                                     {0.138, 1.206, 1.206, 0.029},
                                     {0.5323, 0.0, 1.206, 0.3}};
  set_quadrants(c, q, 0.8, 0.8);
  c.t_end = 0.8;
  c.output_times = {0.8};
  c.diagnostics = {"min-density", "symmetry-diag", "fallback-quadrant1"};
  c.notes = "artifact-chosen: t_end 0.8; desk mesh 1/400 (reference mesh 1/1000)";
  return c;
}

CaseSpec rayleigh_taylor() {
  CaseSpec c;
  c.name = "rayleigh-taylor";
  c.dimension = 2;
  c.x0 = 0.0;
  c.x1 = 0.25;
  c.y0 = 0.0;
  c.y1 = 1.0;
  c.gamma = 5.0 / 3.0;
  const double g = c.gamma;
  c.ic = [g](double x, double y) -> PrimitiveState {
    double rho, p;
    if (y <= 0.5) {
      rho = 2.0;
      p = 2.0 * y + 1.0;
    } else {
      rho = 1.0;
      p = y + 1.5;
    }
    double cs = std::sqrt(g * p / rho);
    return {rho, 0.0, -0.025 * cs * std::cos(8.0 * kPi * x), p};
  };
  c.averaging = IcAveraging::center;
  c.bc.left.kind = c.bc.right.kind = BoundaryKind::reflective;
  c.bc.top = {BoundaryKind::fixed, {1.0, 0.0, 0.0, 2.5}};
  c.bc.bottom = {BoundaryKind::fixed, {2.0, 0.0, 0.0, 1.0}};
  c.source = {SourceKind::gravity, 1.0};
  c.t_end = 2.5;
  c.nx = 50;
  c.ny = 200;
  c.output_times = {1.75, 2.0, 2.25, 2.5};
  c.diagnostics = {"mixing-width", "total-conservation", "min-density"};
  c.notes = "desk mesh 1/200 (reference meshes 1/800 and 1/1600)";
  return c;
}

// Smooth periodic vortex on [0,10]^2 advected by (1,1).  The perturbation is
// summed over the neighbouring periodic images so that the field is smooth
// across the domain boundary.
PrimitiveState vortex_state(double eps, double gamma, double x, double y, double t) {
  const double L = 10.0;
  double cx = std::fmod(5.0 + t, L), cy = std::fmod(5.0 + t, L);
  double du = 0.0, dv = 0.0, dT = 0.0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      double xb = x - cx + a * L, yb = y - cy + b * L;
      double r2 = xb * xb + yb * yb;
      double e = std::exp(0.5 * (1.0 - r2));
      du += -eps / (2.0 * kPi) * e * yb;
      dv += eps / (2.0 * kPi) * e * xb;
      dT += -(gamma - 1.0) * eps * eps / (8.0 * gamma * kPi * kPi) * e * e;
    }
  double T = 1.0 + dT;
  double rho = std::pow(T, 1.0 / (gamma - 1.0));
  return {rho, 1.0 + du, 1.0 + dv, rho * T};
}

CaseSpec isentropic_vortex(const std::map<std::string, std::string>& params) {
  CaseSpec c;
  c.name = "isentropic-vortex";
  c.dimension = 2;
  c.x0 = c.y0 = 0.0;
  c.x1 = c.y1 = 10.0;
  c.gamma = 1.4;
  double eps = 5.0;
  if (auto it = params.find("eps"); it != params.end()) {
    eps = parse_num(it->second, "eps");
    c.params["eps"] = fmt_num(eps);
  }
  const double g = c.gamma;
  c.ic = [eps, g](double x, double y) { return vortex_state(eps, g, x, y, 0.0); };
  c.oracle = [eps, g](double x, double y, double t) { return vortex_state(eps, g, x, y, t); };
  c.averaging = IcAveraging::gauss;
  c.averaging_points = 5;
  c.bc = BoundaryCondition::all(BoundaryKind::periodic);
  c.t_end = 2.0;
  c.nx = c.ny = 64;
  c.output_times = {2.0};
  c.diagnostics = {"oracle-L1-error", "total-conservation"};
  return c;
}

CaseSpec shock_tube(const std::map<std::string, std::string>& params) {
  CaseSpec c;
  c.name = "shock-tube";
  std::map<std::string, double> v = {{"rl", 1.0}, {"ul", 0.0}, {"pl", 1.0}, {"rr", 0.125},
                                     {"ur", 0.0}, {"pr", 0.1}, {"t", 0.2}};
  for (const auto& [k, s] : params) {
    if (!v.count(k)) throw std::invalid_argument("shock-tube: unknown parameter " + k);
    v[k] = parse_num(s, k);
    c.params[k] = fmt_num(v[k]);
  }
  c.dimension = 1;
  c.gamma = 1.4;
  PrimitiveState l{v["rl"], v["ul"], 0.0, v["pl"]}, r{v["rr"], v["ur"], 0.0, v["pr"]};
  RiemannSolution1D sol = exact_riemann(l, r, c.gamma);
  c.xc = 0.5;
  c.ic = [l, r](double x, double) { return x <= 0.5 ? l : r; };
  c.oracle = [sol](double x, double, double t) { return sol.sample((x - 0.5) / t); };
  c.averaging = IcAveraging::center;
  c.bc = BoundaryCondition::all(BoundaryKind::outflow);
  c.t_end = v["t"];
  c.nx = 200;
  c.ny = 1;
  c.output_times = {c.t_end};
  c.diagnostics = {"line-profile", "oracle-L1-error", "total-conservation"};
  return c;
}

// Gauss-Legendre nodes and weights on [-1/2, 1/2], weights summing to 1.
void gauss_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  switch (n) {
    case 1:
      x = {0.0};
      w = {1.0};
      return;
    case 2:
      x = {-0.28867513459481287, 0.28867513459481287};
      w = {0.5, 0.5};
      return;
    case 3:
      x = {-0.3872983346207417, 0.0, 0.3872983346207417};
      w = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
      return;
    case 4:
      x = {-0.43056815579702629, -0.16999052179242813, 0.16999052179242813, 0.43056815579702629};
      w = {0.17392742256872693, 0.32607257743127307, 0.32607257743127307, 0.17392742256872693};
      return;
    case 5:
      x = {-0.45308992296933199, -0.26923465505284155, 0.0, 0.26923465505284155,
           0.45308992296933199};
      w = {0.11846344252809454, 0.23931433524968324, 0.28444444444444444, 0.23931433524968324,
           0.11846344252809454};
      return;
    default:
      throw std::invalid_argument("Gauss rule supports 1..5 points");
  }
}

}  // namespace

HurricaneParams hurricane_params(const std::string& regime) {
  HurricaneParams h;
  if (regime == "critical")
    h.v0 = 10.0;
  else if (regime == "high")
    h.v0 = 12.5;
  else if (regime == "low")
    h.v0 = 7.5;
  else
    throw std::invalid_argument("unknown hurricane regime " + regime);
  return h;
}

std::array<CornerState, 4> vortex_sheet_corners(SheetSign sign) {
  // Counterclockwise from the upper right.  The same-sign set satisfies
  // U1 = U2 > U3 = U4 and V2 = V3 > V1 = V4, which opens a vacuum rectangle
  // in the pressureless limit; the opposite-sign set overlaps quadrants 1
  // and 3 instead.
  if (sign == SheetSign::same)
    return {{{1.0, 0.75, -0.5}, {2.0, 0.75, 0.5}, {1.0, -0.75, 0.5}, {3.0, -0.75, -0.5}}};
  return {{{1.0, -0.75, -0.5}, {2.0, -0.75, 0.5}, {1.0, 0.75, 0.5}, {3.0, 0.75, -0.5}}};
}

RiemannSolution1D large_density_ratio_solution(bool mild, bool caption) {
  PrimitiveState l{10000.0, 0.0, 0.0, 10000.0}, r{1.0, 0.0, 0.0, 1.0};
  if (mild) {
    if (caption)
      l = {1000.0, 0.0, 0.0, 1000.0};
    else
      r = {1000.0, 0.0, 0.0, 1000.0};
  }
  return exact_riemann(l, r, 1.4);
}

std::string CaseSpec::id() const {
  std::string s = name;
  bool first = true;
  for (const auto& [k, v] : params) {
    s += first ? ":" : ",";
    s += k + "=" + v;
    first = false;
  }
  return s;
}

Grid CaseSpec::grid(int nx_, int ny_) const {
  if (dimension == 1) return Grid::make(nx_, 1, x0, x1, 0.0, 1.0);
  return Grid::make(nx_, ny_, x0, x1, y0, y1);
}

Grid CaseSpec::grid_for_spacing(double inv_h) const {
  int nx_ = static_cast<int>(std::lround((x1 - x0) * inv_h));
  int ny_ = dimension == 2 ? static_cast<int>(std::lround((y1 - y0) * inv_h)) : 1;
  return grid(std::max(nx_, 1), std::max(ny_, 1));
}

CaseSpec make_case(const std::string& id) {
  std::string name = id;
  std::map<std::string, std::string> params;
  if (auto colon = id.find(':'); colon != std::string::npos) {
    name = id.substr(0, colon);
    for (const auto& kv : split(id.substr(colon + 1), ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad case parameter '" + kv + "'");
      params[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
    }
  }
  auto no_params = [&]() {
    if (!params.empty()) throw std::invalid_argument(name + " takes no parameters");
  };
  if (name == "titarev-toro") return no_params(), titarev_toro();
  if (name == "large-density-ratio") return no_params(), large_density_ratio(false, false);
  if (name == "large-density-ratio-mild") {
    bool caption = false;
    for (const auto& [k, v] : params) {
      if (k != "reading" || (v != "caption" && v != "text"))
        throw std::invalid_argument("large-density-ratio-mild accepts reading=text|caption");
      caption = v == "caption";
    }
    return large_density_ratio(true, caption);
  }
  if (name == "hurricane-critical") return no_params(), hurricane("critical");
  if (name == "hurricane-high") return no_params(), hurricane("high");
  if (name == "hurricane-low") return no_params(), hurricane("low");
  if (name == "vortex-sheets-same") return vortex_sheets(SheetSign::same, params);
  if (name == "vortex-sheets-opposite") return vortex_sheets(SheetSign::opposite, params);
  if (name == "rarefaction-strong") return no_params(), rarefaction(true);
  if (name == "rarefaction-weak") return no_params(), rarefaction(false);
  if (name == "four-shocks") return no_params(), four_shocks();
  if (name == "rayleigh-taylor") return no_params(), rayleigh_taylor();
  if (name == "isentropic-vortex") return isentropic_vortex(params);
  if (name == "shock-tube") return shock_tube(params);
  throw std::invalid_argument("unknown case '" + name + "'");
}

std::vector<std::string> list_cases() {
  return {"titarev-toro",
          "large-density-ratio",
          "large-density-ratio-mild",
          "hurricane-critical",
          "hurricane-high",
          "hurricane-low",
          "vortex-sheets-same:p0=<1|0.5|0.25|0.15|0.1>",
          "vortex-sheets-opposite:p0=<1|0.75|0.5|0.3|0.2>",
          "rarefaction-strong",
          "rarefaction-weak",
          "four-shocks",
          "rayleigh-taylor",
          "isentropic-vortex[:eps=<v>]",
          "shock-tube[:rl=,ul=,pl=,rr=,ur=,pr=,t=]"};
}

namespace {

Field average_cells(const CaseSpec& c, const Grid& g,
                    const std::function<PrimitiveState(double, double)>& q) {
  GasModel gas(c.gamma);
  Field f(g);
  std::vector<double> px, wx, py, wy;
  switch (c.averaging) {
    case IcAveraging::center:
      px = {0.0};
      wx = {1.0};
      break;
    case IcAveraging::gauss:
      gauss_rule(c.averaging_points, px, wx);
      break;
    case IcAveraging::subsample: {
      int n = c.averaging_points;
      for (int k = 0; k < n; ++k) {
        px.push_back((k + 0.5) / n - 0.5);
        wx.push_back(1.0 / n);
      }
      break;
    }
  }
  if (g.dims() == 2) {
    py = px;
    wy = wx;
  } else {
    py = {0.0};
    wy = {1.0};
  }
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double xc = g.xc(i), yc = g.yc(j);
      if (px.size() == 1 && py.size() == 1) {
        f.set(i, j, to_conserved(q(xc, yc), gas).vec());
        continue;
      }
      Vec4 acc{};
      for (std::size_t b = 0; b < py.size(); ++b)
        for (std::size_t a = 0; a < px.size(); ++a) {
          Vec4 w = to_conserved(q(xc + px[a] * g.dx, yc + py[b] * g.dy), gas).vec();
          for (int m = 0; m < 4; ++m) acc[m] += wx[a] * wy[b] * w[m];
        }
      f.set(i, j, acc);
    }
  return f;
}

}  // namespace

Field initial_field(const CaseSpec& c, const Grid& g) { return average_cells(c, g, c.ic); }

Field oracle_averages(const CaseSpec& c, const Grid& g, double t) {
  if (!c.oracle) throw std::invalid_argument(c.id() + " has no reference solution");
  auto o = c.oracle;
  return average_cells(c, g, [&o, t](double x, double y) { return o(x, y, t); });
}

Field sample_oracle(const CaseSpec& c, const Grid& g, double t) {
  if (!c.oracle) throw std::invalid_argument(c.id() + " has no reference solution");
  Field f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      PrimitiveState q = c.oracle(g.xc(i), g.yc(j), t);
      f.set(i, j, {q.rho, q.u, q.v, q.p});
    }
  return f;
}

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::reflective: return "reflective";
    case BoundaryKind::fixed: return "fixed";
    case BoundaryKind::periodic: return "periodic";
  }
  return "outflow";
}

BoundaryKind boundary_kind_from_string(const std::string& s) {
  if (s == "outflow") return BoundaryKind::outflow;
  if (s == "reflective") return BoundaryKind::reflective;
  if (s == "fixed") return BoundaryKind::fixed;
  if (s == "periodic") return BoundaryKind::periodic;
  throw std::invalid_argument("unknown boundary kind '" + s + "'");
}

namespace {

std::string emit_edge(const EdgeCondition& e) {
  std::string s = to_string(e.kind);
  if (e.kind == BoundaryKind::fixed)
    s += ":" + fmt_num(e.state.rho) + "," + fmt_num(e.state.u) + "," + fmt_num(e.state.v) + "," +
         fmt_num(e.state.p);
  return s;
}

EdgeCondition parse_edge(const std::string& s) {
  EdgeCondition e;
  auto colon = s.find(':');
  e.kind = boundary_kind_from_string(s.substr(0, colon));
  if (e.kind == BoundaryKind::fixed) {
    if (colon == std::string::npos) throw std::invalid_argument("fixed boundary needs a state");
    auto v = split(s.substr(colon + 1), ',');
    if (v.size() != 4) throw std::invalid_argument("fixed boundary needs rho,u,v,p");
    e.state = {parse_num(v[0], "rho"), parse_num(v[1], "u"), parse_num(v[2], "v"),
               parse_num(v[3], "p")};
  }
  return e;
}

std::string join_nums(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt_num(x);
  return s;
}

std::string averaging_name(const CaseSpec& c) {
  switch (c.averaging) {
    case IcAveraging::center: return "center";
    case IcAveraging::gauss: return "gauss:" + std::to_string(c.averaging_points);
    case IcAveraging::subsample: return "subsample:" + std::to_string(c.averaging_points);
  }
  return "center";
}

}  // namespace

std::string emit_case_config(const CaseSpec& c) {
  std::ostringstream os;
  os << "case=" << c.id() << "\n";
  os << "dimension=" << c.dimension << "\n";
  os << "domain=" << join_nums({c.x0, c.x1, c.y0, c.y1}) << "\n";
  os << "gamma=" << fmt_num(c.gamma) << "\n";
  os << "t_start=" << fmt_num(c.t_start) << "\n";
  os << "t_end=" << fmt_num(c.t_end) << "\n";
  os << "nx=" << c.nx << "\nny=" << c.ny << "\n";
  os << "bc_left=" << emit_edge(c.bc.left) << "\n";
  os << "bc_right=" << emit_edge(c.bc.right) << "\n";
  os << "bc_bottom=" << emit_edge(c.bc.bottom) << "\n";
  os << "bc_top=" << emit_edge(c.bc.top) << "\n";
  os << "source=" << (c.source.kind == SourceKind::gravity ? "gravity:" + fmt_num(c.source.g) : "none")
     << "\n";
  os << "averaging=" << averaging_name(c) << "\n";
  os << "recon=" << (c.recon == ReconMode::characteristic ? "char" : "comp") << "\n";
  os << "output_times=" << join_nums(c.output_times) << "\n";
  std::string d;
  for (const auto& s : c.diagnostics) d += (d.empty() ? "" : ",") + s;
  os << "diagnostics=" << d << "\n";
  return os.str();
}

CaseSpec parse_case_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("case config line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!kv.count("case")) throw std::invalid_argument("case config needs case=<id>");
  CaseSpec c = make_case(kv["case"]);
  for (const auto& [k, v] : kv) {
    if (k == "case") continue;
    if (k == "dimension") {
      int d = static_cast<int>(parse_num(v, k));
      if (d != c.dimension) throw std::invalid_argument("dimension cannot be changed for " + c.name);
    } else if (k == "domain") {
      auto p = split(v, ',');
      if (p.size() != 4) throw std::invalid_argument("domain needs x0,x1,y0,y1");
      c.x0 = parse_num(p[0], k);
      c.x1 = parse_num(p[1], k);
      c.y0 = parse_num(p[2], k);
      c.y1 = parse_num(p[3], k);
    } else if (k == "gamma") {
      c.gamma = parse_num(v, k);
    } else if (k == "t_start") {
      c.t_start = parse_num(v, k);
    } else if (k == "t_end") {
      c.t_end = parse_num(v, k);
    } else if (k == "nx") {
      c.nx = static_cast<int>(parse_num(v, k));
    } else if (k == "ny") {
      c.ny = static_cast<int>(parse_num(v, k));
    } else if (k == "bc_left") {
      c.bc.left = parse_edge(v);
    } else if (k == "bc_right") {
      c.bc.right = parse_edge(v);
    } else if (k == "bc_bottom") {
      c.bc.bottom = parse_edge(v);
    } else if (k == "bc_top") {
      c.bc.top = parse_edge(v);
    } else if (k == "source") {
      if (v == "none") {
        c.source = {};
      } else if (v.rfind("gravity:", 0) == 0) {
        c.source = {SourceKind::gravity, parse_num(v.substr(8), k)};
      } else {
        throw std::invalid_argument("unknown source '" + v + "'");
      }
    } else if (k == "averaging") {
      auto colon = v.find(':');
      std::string kind = v.substr(0, colon);
      if (kind == "center") {
        c.averaging = IcAveraging::center;
      } else if (kind == "gauss" || kind == "subsample") {
        c.averaging = kind == "gauss" ? IcAveraging::gauss : IcAveraging::subsample;
        if (colon == std::string::npos) throw std::invalid_argument("averaging needs a point count");
        c.averaging_points = static_cast<int>(parse_num(v.substr(colon + 1), k));
      } else {
        throw std::invalid_argument("unknown averaging '" + v + "'");
      }
    } else if (k == "recon") {
      if (v == "char")
        c.recon = ReconMode::characteristic;
      else if (v == "comp")
        c.recon = ReconMode::componentwise;
      else
        throw std::invalid_argument("recon must be char or comp");
    } else if (k == "output_times") {
      c.output_times.clear();
      for (const auto& s : split(v, ',')) c.output_times.push_back(parse_num(s, k));
    } else if (k == "diagnostics") {
      c.diagnostics = split(v, ',');
    } else {
      throw std::invalid_argument("unknown case config key '" + k + "'");
    }
  }
  c.bc.validate();
  return c;
}

bool same_case(const CaseSpec& a, const CaseSpec& b) {
  auto edge_eq = [](const EdgeCondition& x, const EdgeCondition& y) {
    return x.kind == y.kind && (x.kind != BoundaryKind::fixed || x.state == y.state);
  };
  if (a.id() != b.id() || a.dimension != b.dimension || a.x0 != b.x0 || a.x1 != b.x1 ||
      a.y0 != b.y0 || a.y1 != b.y1 || a.gamma != b.gamma || a.t_start != b.t_start ||
      a.t_end != b.t_end || a.nx != b.nx || a.ny != b.ny || a.averaging != b.averaging ||
      a.averaging_points != b.averaging_points || a.recon != b.recon || a.output_times != b.output_times ||
      a.diagnostics != b.diagnostics || a.source.kind != b.source.kind ||
      a.source.g != b.source.g || a.has_oracle() != b.has_oracle())
    return false;
  if (!edge_eq(a.bc.left, b.bc.left) || !edge_eq(a.bc.right, b.bc.right) ||
      !edge_eq(a.bc.bottom, b.bc.bottom) || !edge_eq(a.bc.top, b.bc.top))
    return false;
  for (int j = 0; j <= 8; ++j)
    for (int i = 0; i <= 8; ++i) {
      double x = a.x0 + (a.x1 - a.x0) * (i + 0.37) / 9.0;
      double y = a.dimension == 2 ? a.y0 + (a.y1 - a.y0) * (j + 0.41) / 9.0 : 0.5;
      if (!(a.ic(x, y) == b.ic(x, y))) return false;
    }
  return true;
}

}  // namespace ebench
