#include "alp/norms/data_norms.hpp"

#include <cmath>

#include "alp/error.hpp"
#include "alp/spectral/operators.hpp"

namespace alp {

XNorms x_norms(const SpectralField3& a0, const SpectralField3& v0, double delta, double gamma) {
  require_scalar(a0, "x_norms a0");
  require_vector(v0, "x_norms v0");
  require_same_grid(a0, v0, "x_norms");
  const double vn = v0.l2_norm();
  if (div(v0).l2_norm() > 1e-8 * vn) throw PreconditionError("x_norms: v0 is not divergence free");
  const double g = gamma;
  const BlockNorms an = block_norms(a0, delta);
  const BlockNorms vb = block_norms(v0, delta);
  XNorms x;
  x.x1 = an.besov({1 - g, 0.5 + g}) + an.besov({1 + g, 0.5 - g}) + an.besov({g, 1.5 - g});
  x.x2 = vb.besov({-0.5 + g, -g}) + vb.besov({0.0, -0.5});
  x.x3 = vb.besov({g, 0.5 - g}) + vb.besov({-g, 0.5 + g});
  return x;
}

double interpolation_check(const SpectralField3& g_phase, AnisoBesovIndex mid, AnisoBesovIndex low,
                           AnisoBesovIndex high) {
  const double sum = mid.sigma + mid.s;
  const double tol = 1e-12 * (1.0 + std::abs(sum));
  if (!(low.sigma < mid.sigma && mid.sigma < high.sigma && high.s < mid.s && mid.s < low.s) ||
      std::abs(low.sigma + low.s - sum) > tol || std::abs(high.sigma + high.s - sum) > tol) {
    throw PreconditionError("interpolation_check: need sigma1 < sigma < sigma2, s2 < s < s1, equal sums");
  }
  const BlockNorms b = block_norms(g_phase);
  const double num = b.besov(mid);
  const double den = b.besov(low) + b.besov(high);
  if (den == 0.0) {
    if (num != 0.0) throw NumericalError("interpolation_check: zero denominator with nonzero numerator");
    return 0.0;
  }
  return num / den;
}

}  // namespace alp
