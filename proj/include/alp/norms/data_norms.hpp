#pragma once

#include "alp/norms/besov.hpp"

namespace alp {

/// Initial-data norms of the global existence result, all weighted by e^{delta|D|}:
///   X1(a0) = B^{1-g,1/2+g} + B^{1+g,1/2-g} + B^{g,3/2-g}
///   X2(v0) = B^{-1/2+g,-g} + B^{0,-1/2}
///   X3(v0) = B^{g,1/2-g} + B^{-g,1/2+g}
struct XNorms {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

/// Throws PreconditionError when ||div v0|| > 1e-8 ||v0||.
XNorms x_norms(const SpectralField3& a0, const SpectralField3& v0, double delta, double gamma);

/// Interpolation ratio ||g||_{(sigma,s)} / (||g||_{(sigma1,s1)} + ||g||_{(sigma2,s2)})
/// for sigma1 < sigma < sigma2, s2 < s < s1 and equal index sums. 0/0 gives 0;
/// a zero denominator with nonzero numerator throws NumericalError.
double interpolation_check(const SpectralField3& g_phase, AnisoBesovIndex mid, AnisoBesovIndex low,
                           AnisoBesovIndex high);

}  // namespace alp
