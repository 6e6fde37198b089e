#include "alp/paraproduct/composition.hpp"

#include <algorithm>
#include <sstream>

#include "alp/error.hpp"
#include "alp/norms/chemin_lerner.hpp"
#include "alp/spectral/fft.hpp"
#include "alp/spectral/operators.hpp"

namespace alp {

double min_one_plus(const SpectralField3& a) {
  require_scalar(a, "min_one_plus");
  const PhysicalField p = to_physical(a);
  return 1.0 + *std::min_element(p.begin(), p.end());
}

SpectralField3 compose_G(const SpectralField3& a) {
  require_scalar(a, "compose_G");
  PhysicalField p = to_physical(a);
  for (double& x : p) {
    if (!(1.0 + x > 0.0)) {
      std::ostringstream msg;
      msg << "compose_G: density positivity lost, 1 + a = " << 1.0 + x;
      throw DensityPositivityError(msg.str());
    }
    x = x / (1.0 + x);
  }
  return dealias(from_physical(a.grid(), p));
}

GSmallnessResult g_smallness_check(const std::vector<SpectralField3>& a_series, double band, AnisoBesovIndex idx,
                                   double eps_small) {
  if (a_series.empty()) throw PreconditionError("g_smallness_check: empty series");
  NormAccumulator a_acc(a_series.front().grid(), 1);
  NormAccumulator g_acc(a_series.front().grid(), 1);
  for (const SpectralField3& a : a_series) {
    a_acc.observe(block_norms(a, band));
    g_acc.observe(block_norms(compose_G(a), band));
  }
  GSmallnessResult r;
  r.smallness = a_acc.norm(TimeExponent::infinity, {1.0, 0.5});
  r.precondition_held = r.smallness <= eps_small;
  const double den = a_acc.norm(TimeExponent::infinity, idx);
  const double num = g_acc.norm(TimeExponent::infinity, idx);
  r.ratio = den == 0.0 ? 0.0 : num / den;
  r.pass = r.precondition_held && r.ratio <= 2.0;
  return r;
}

}  // namespace alp
