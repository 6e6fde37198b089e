#include "alp/semigroup/damping.hpp"

#include <algorithm>
#include <cmath>

#include "alp/error.hpp"

namespace alp {

DampingResult damping_bound_check(double lambda, double c, int l, const std::vector<double>& theta_dot,
                                  const std::vector<double>& dt) {
  if (!(lambda > 0.0) || !(c > 0.0)) throw PreconditionError("damping: lambda and c must be positive");
  if (theta_dot.size() != dt.size()) throw PreconditionError("damping: series lengths differ");
  const double scale = lambda * std::ldexp(1.0, l);
  const double A = c * scale;
  double integral = 0.0;  // I at the current segment end
  double theta = 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i < theta_dot.size(); ++i) {
    if (theta_dot[i] < 0.0) throw PreconditionError("damping: negative thetadot sample");
    if (!(dt[i] > 0.0)) throw PreconditionError("damping: interval lengths must be positive");
    const double inc = theta_dot[i] * dt[i];
    // I(t_{i+1}) = e^{-A inc} I(t_i) + (1 - e^{-A inc}) / A
    integral = std::exp(-A * inc) * integral - std::expm1(-A * inc) / A;
    theta += inc;
    best = std::max(best, integral);
  }
  DampingResult r;
  r.scaled = scale * best;
  r.bound = 1.0 / c;
  r.telescoped = -std::expm1(-A * theta) / c;
  return r;
}

}  // namespace alp
