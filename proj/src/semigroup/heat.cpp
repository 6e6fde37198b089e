#include "alp/semigroup/heat.hpp"

#include <cmath>

#include "alp/error.hpp"
#include "alp/spectral/operators.hpp"

namespace alp {

SpectralField3 heat_apply(const SpectralField3& f, double t, double eps) {
  if (!(t >= 0.0)) throw PreconditionError("heat_apply: t must be >= 0");
  if (t == 0.0) return f;
  const ModeTable& table = f.modes();
  return apply_multiplier(f, [&](std::size_t i) { return std::exp(-t * neg_laplacian_eps_symbol(table, i, eps)); });
}

double phi1(double mu, double t) {
  const double x = mu * t;
  if (x == 0.0) return t;
  return -std::expm1(-x) / mu;
}

SpectralField3 phi1_apply(const SpectralField3& f, double t, double eps) {
  if (!(t >= 0.0)) throw PreconditionError("phi1_apply: t must be >= 0");
  const ModeTable& table = f.modes();
  return apply_multiplier(f, [&](std::size_t i) { return phi1(neg_laplacian_eps_symbol(table, i, eps), t); });
}

void ForcingSeries::push(double t, SpectralField3 f) {
  if (!time.empty() && !(t > time.back())) throw PreconditionError("ForcingSeries: times must increase");
  if (time.empty() && t != 0.0) throw PreconditionError("ForcingSeries: series must start at t = 0");
  time.push_back(t);
  value.push_back(std::move(f));
}

SpectralField3 duhamel(const ForcingSeries& forcing, double t, double eps) {
  if (forcing.value.empty()) throw PreconditionError("duhamel: empty forcing series");
  if (t < forcing.time.back()) throw PreconditionError("duhamel: evaluation time precedes the last sample");
  SpectralField3 acc = forcing.value.front().zeros_like();
  for (std::size_t i = 0; i < forcing.value.size(); ++i) {
    const double end = i + 1 < forcing.time.size() ? forcing.time[i + 1] : t;
    const double len = end - forcing.time[i];
    if (len <= 0.0) continue;
    acc = heat_apply(acc, len, eps);
    acc += phi1_apply(forcing.value[i], len, eps);
  }
  return acc;
}

}  // namespace alp
