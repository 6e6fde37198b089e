#pragma once

#include "alp/semigroup/eps_params.hpp"
#include "alp/spectral/field.hpp"

namespace alp {

/// g(x_h, x3) = f(x_h, eps x3) on the same grid. When eps * xi_3 is an integer
/// for every nonzero coefficient the modes are reindexed exactly; otherwise
/// the columns are resampled and checked at the cell midpoints, and an
/// interpolation error above 1e-8 (relative to max |f|) throws PreconditionError.
/// `interpolation_error` receives the midpoint error (0 after reindexing).
SpectralField3 slow_vertical(const SpectralField3& f, double eps, double* interpolation_error = nullptr);

struct IllPreparedData {
  SpectralField3 a0;    // rescaled density perturbation (input)
  SpectralField3 v0;    // rescaled velocity, Leray-projected
  SpectralField3 rho0;  // 1 + eps^beta a0(x_h, eps x3)
  SpectralField3 u0;    // (eps^{1-alpha} v0^h, eps^{-alpha} v0^3)(x_h, eps x3)
  double interpolation_error = 0.0;
};

/// Rescaled pair for the solver and the physical pair it represents.
IllPreparedData make_ill_prepared(const SpectralField3& a0, const SpectralField3& v0, const EpsParams& params);

}  // namespace alp
