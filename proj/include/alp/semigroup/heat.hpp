#pragma once

#include <vector>

#include "alp/spectral/field.hpp"

namespace alp {

/// e^{t Delta_eps}: coeff(xi) <- exp(-t (|xi_h|^2 + eps^2 xi_3^2)) coeff(xi). t >= 0.
SpectralField3 heat_apply(const SpectralField3& f, double t, double eps);

/// Exponential-integrator weight int_0^t e^{-(t - s) mu} ds = (1 - e^{-t mu}) / mu,
/// equal to t at mu = 0.
double phi1(double mu, double t);

/// Applies the weight phi1(mu(xi), t) to every coefficient.
SpectralField3 phi1_apply(const SpectralField3& f, double t, double eps);

/// Piecewise-constant forcing: value[i] holds on [time[i], time[i+1]), the
/// last value up to the evaluation time.
struct ForcingSeries {
  std::vector<double> time;
  std::vector<SpectralField3> value;

  void push(double t, SpectralField3 f);
};

/// E_eps f(t) = int_0^t e^{(t - s) Delta_eps} f(s) ds, exact for piecewise-constant
/// forcing. Requires a non-empty series starting at 0, increasing times, t >= last time.
SpectralField3 duhamel(const ForcingSeries& forcing, double t, double eps);

}  // namespace alp
