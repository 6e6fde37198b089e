#include "alp/semigroup/smoothing.hpp"

#include <cmath>

#include "alp/error.hpp"
#include "alp/semigroup/heat.hpp"
#include "alp/spectral/operators.hpp"

namespace alp {
namespace {

double inverse(TimeExponent p) {
  switch (p) {
    case TimeExponent::one:
      return 1.0;
    case TimeExponent::two:
      return 0.5;
    case TimeExponent::infinity:
      return 0.0;
  }
  return 0.0;
}

void require_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 2.0)) throw PreconditionError("smoothing: beta must lie in [0, 2]");
}

SmoothingRatio finish(double lhs, double rhs) {
  SmoothingRatio r{lhs, rhs, 0.0};
  if (rhs == 0.0) {
    if (lhs != 0.0) throw NumericalError("smoothing: zero data norm with nonzero solution norm");
    return r;
  }
  r.ratio = lhs / rhs;
  return r;
}

// Geometric grid 0 = t_0 < ... < t_n = T, t_i = T (e^{k i/n} - 1) / (e^k - 1), k = ln(1 + T/first).
std::vector<double> time_grid(double horizon, int steps, double first) {
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  const double kappa = std::log1p(horizon / first);
  for (int i = 0; i <= steps; ++i) {
    t[static_cast<std::size_t>(i)] = horizon * std::expm1(kappa * i / steps) / std::expm1(kappa);
  }
  t.back() = horizon;
  return t;
}

}  // namespace

double duhamel_exponent_inverse(TimeExponent r1, TimeExponent r2) { return 1.0 + inverse(r1) - inverse(r2); }

SmoothingRatio smoothing_check_41(const SpectralField3& v0, const HeatSmoothingOptions& o) {
  require_vector(v0, "smoothing_check_41");
  require_beta(o.beta);
  if (!(o.eps > 0.0) || !(o.horizon > 0.0) || o.steps < 1 || !(o.first_step > 0.0))
    throw PreconditionError("smoothing_check_41: eps, horizon, steps and first_step must be positive");
  const double inv_r = inverse(o.r);
  SpectralField3 data = v0;
  AnisoBesovIndex rhs_index{o.index.sigma - (2.0 - o.beta) * inv_r, o.index.s - o.beta * inv_r};
  ComponentRange rhs_range{};
  if (o.vertical_component) {
    if (div(v0).l2_norm() > 1e-8 * v0.l2_norm()) throw PreconditionError("smoothing_check_41: v0 not divergence free");
    data = v0.extract(2);
    rhs_index.sigma += 1.0;
    rhs_index.s -= 1.0;
    rhs_range = kHorizontalComponents;
  }
  const double rhs = block_norms(v0, o.delta).besov(rhs_index, rhs_range);

  NormAccumulator acc(v0.grid(), data.components());
  acc.observe(block_norms(data, o.delta));  // t = 0 for the supremum
  if (o.r != TimeExponent::infinity) {
    const auto t = time_grid(o.horizon, o.steps, o.first_step);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      const double mid = 0.5 * (t[i] + t[i + 1]);
      acc.accumulate(block_norms(heat_apply(data, mid, o.eps), o.delta), t[i + 1] - t[i]);
    }
  }
  const double lhs = std::pow(o.eps, o.beta * inv_r) * acc.norm(o.r, o.index);
  return finish(lhs, rhs);
}

SmoothingRatio smoothing_check_42(const std::vector<SpectralField3>& forcing, const DuhamelSmoothingOptions& o) {
  if (forcing.empty()) throw PreconditionError("smoothing_check_42: empty forcing series");
  require_beta(o.beta);
  if (inverse(o.r2) < inverse(o.r1)) throw PreconditionError("smoothing_check_42: requires r2 <= r1");
  if (!(o.eps > 0.0) || !(o.dt > 0.0) || o.substeps < 1)
    throw PreconditionError("smoothing_check_42: eps, dt and substeps must be positive");
  const double inv_r = duhamel_exponent_inverse(o.r1, o.r2);
  const AnisoBesovIndex rhs_index{o.index.sigma - (2.0 - o.beta) * inv_r, o.index.s - o.beta * inv_r};

  const Grid& g = forcing.front().grid();
  const int comps = forcing.front().components();
  NormAccumulator f_acc(g, comps);
  NormAccumulator e_acc(g, comps);
  SpectralField3 e = forcing.front().zeros_like();
  const double h = o.dt / o.substeps;
  for (const SpectralField3& f : forcing) {
    f_acc.accumulate(block_norms(f, o.delta), o.dt);
    for (int k = 0; k < o.substeps; ++k) {
      const SpectralField3 mid = heat_apply(e, 0.5 * h, o.eps) + phi1_apply(f, 0.5 * h, o.eps);
      e_acc.accumulate(block_norms(mid, o.delta), h);
      e = heat_apply(e, h, o.eps) + phi1_apply(f, h, o.eps);
      e_acc.observe(block_norms(e, o.delta));
    }
  }
  const double lhs = std::pow(o.eps, o.beta * inv_r) * e_acc.norm(o.r1, o.index);
  const double rhs = f_acc.norm(o.r2, rhs_index);
  return finish(lhs, rhs);
}

}  // namespace alp
