#pragma once

#include <vector>

#include "alp/norms/chemin_lerner.hpp"

namespace alp {

struct SmoothingRatio {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // 0 when both sides vanish
};

/// Heat-flow smoothing from initial data, with the static phase Phi = delta |xi|:
///   eps^{beta/r} ||[e^{t Delta_eps} v0]_Phi||_{L~^r_T(B^{sigma,s})}
///     vs ||e^{delta|D|} v0||_{B^{sigma - (2-beta)/r, s - beta/r}}.
/// With vertical_component set the LHS uses v0^3 and the RHS
/// ||e^{delta|D|} v0^h||_{B^{sigma + 1 - (2-beta)/r, s - 1 - beta/r}}; v0 must then be
/// divergence free.
struct HeatSmoothingOptions {
  double eps = 0.1;
  AnisoBesovIndex index{1.0, 0.5};
  double beta = 0.0;  // in [0, 2]
  TimeExponent r = TimeExponent::one;
  double delta = 0.0;
  double horizon = 20.0;  // T
  int steps = 400;  // cells of a geometric time grid on [0, T]
  double first_step = 1e-4;  // grading scale: smaller refines more near t = 0
  bool vertical_component = false;
};

SmoothingRatio smoothing_check_41(const SpectralField3& v0, const HeatSmoothingOptions& opts);

/// Duhamel smoothing: eps^{beta/r} ||[E_eps f]_Phi||_{L~^{r1}_T(B^{sigma,s})}
///   vs ||f_Phi||_{L~^{r2}_T(B^{sigma-(2-beta)/r, s-beta/r})}, 1/r = 1 + 1/r1 - 1/r2.
/// forcing[i] holds on [i dt, (i+1) dt); each interval is split into `substeps`
/// quadrature cells for the LHS.
struct DuhamelSmoothingOptions {
  double eps = 0.1;
  AnisoBesovIndex index{1.0, 0.5};
  double beta = 0.0;
  TimeExponent r1 = TimeExponent::one;
  TimeExponent r2 = TimeExponent::one;
  double delta = 0.0;
  double dt = 0.1;
  int substeps = 16;
};

/// Throws PreconditionError when r2 > r1, beta is outside [0, 2] or the series is empty.
SmoothingRatio smoothing_check_42(const std::vector<SpectralField3>& forcing, const DuhamelSmoothingOptions& opts);

/// 1/r for the Duhamel estimate.
double duhamel_exponent_inverse(TimeExponent r1, TimeExponent r2);

}  // namespace alp
