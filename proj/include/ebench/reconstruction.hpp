// Fifth-order WENO reconstruction (JS, Z, Z+ weights), characteristic
// projection and the interface equilibrium slope.
#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "ebench/state.hpp"

namespace ebench {

enum class WenoVariant { js, z, zplus };

struct WenoConfig {
  WenoVariant variant = WenoVariant::js;
  double epsilon = 1e-6;
  double lambda = 0.0;      // Z+ only
  double zplus_eps = 1e-40; // added to delta in the Z+ formula
};

// Five cell averages w[i-2..i+2].
using Stencil5 = std::array<double, 5>;

enum class Side { left, right };

struct WenoWeights {
  std::array<double, 3> w{}, beta{}, d{};
};

// beta[0] uses cells i..i+2, beta[1] cells i-1..i+1, beta[2] cells i-2..i.
std::array<double, 3> smoothness_indicators(const Stencil5& s);

// Linear weights are (3/10, 3/5, 1/10) for the right value, mirrored for the
// left value.
WenoWeights weno_weights(const std::array<double, 3>& beta, const WenoConfig& cfg, Side side);

// Nonlinear weights for arbitrary linear weights d (index order as beta).
std::array<double, 3> nonlinear_weights(const std::array<double, 3>& beta,
                                        const std::array<double, 3>& d, const WenoConfig& cfg);

// (left, right) point values of cell i at x_{i-1/2} and x_{i+1/2}.
std::pair<double, double> weno5_interface(const Stencil5& s, const WenoConfig& cfg);

struct PointValue {
  double value;
  double slope;  // derivative per unit cell width
};

// Value and slope of the WENO polynomial at x_{i+1/2}.  The slope combines
// the candidate derivatives with the value weights.  The left value is this
// routine applied to the reversed stencil with the slope negated.
PointValue weno5_right(const Stencil5& s, const WenoConfig& cfg);

// Values and slopes at the two Gauss points x_i -/+ (sqrt(3)/6) dx.
struct GaussPair {
  double value_m, value_p;
  double slope_m, slope_p;
};
GaussPair weno5_gauss(const Stencil5& s, const WenoConfig& cfg);

// Fifth-order linear (quartic) reconstruction at the Gauss points and the
// quartic derivative at the Gauss points and at the cell center.
GaussPair quartic_gauss(const Stencil5& s);
double quartic_slope_center(const Stencil5& s);

// Roe-averaged eigenvectors of the normal-frame flux Jacobian.
struct EigenSystem {
  std::array<Vec4, 4> left;   // rows l_k
  std::array<Vec4, 4> right;  // columns r_k
  Vec4 project(const Vec4& w) const;
  Vec4 unproject(const Vec4& c) const;
};
EigenSystem roe_eigensystem(const Vec4& wl, const Vec4& wr, double gamma);

enum class ReconMode { componentwise, characteristic };

struct ReconConfig {
  WenoConfig weno;
  ReconMode mode = ReconMode::characteristic;
};

// Normal-frame states either side of interface i+1/2 with the WENO slopes
// (per unit cell width) of the two reconstructions.
struct InterfaceValues {
  Vec4 wl, wr;
  Vec4 dl, dr;
  bool fallback = false;
};

// cells points at six cell averages i-2..i+3 around interface i+1/2.
InterfaceValues reconstruct_interface(const Vec4* cells, const ReconConfig& cfg, double gamma);

// Reconstruction along a line of cell averages.  Entry k is the interface
// between line[k+2] and line[k+3].  Inadmissible states fall back to the
// adjacent cell averages with zero slopes and set `fallback`.
std::vector<InterfaceValues> reconstruct_characteristic(std::span<const Vec4> line,
                                                        const ReconConfig& cfg,
                                                        const GasModel& gas);

struct EquilibriumSlope {
  Vec4 w0;
  Vec4 s1;
};

// S1 = [-(1/12)(W_{i+2} - W_{i-1}) + (5/4)(W_{i+1} - W_i)] / dx, componentwise.
EquilibriumSlope equilibrium_slope(const Vec4& w_im1, const Vec4& w_i, const Vec4& w_ip1,
                                   const Vec4& w_ip2, const Vec4& w0, double dx);

}  // namespace ebench
