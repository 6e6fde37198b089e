#pragma once

#include <vector>

#include "alp/norms/besov.hpp"

namespace alp {

/// G(a) = a / (1 + a) evaluated pointwise at the grid points, then dealiased.
/// Throws DensityPositivityError when min(1 + a) <= 0.
SpectralField3 compose_G(const SpectralField3& a);

/// min over grid points of 1 + a.
double min_one_plus(const SpectralField3& a);

struct GSmallnessResult {
  bool precondition_held = false;  // ||a_Phi||_{L~inf(B^{1,1/2})} <= eps_small
  double smallness = 0.0;          // that norm
  double ratio = 0.0;              // ||[G(a)]_Phi|| / ||a_Phi|| in the requested index; 0 for a = 0
  bool pass = false;               // precondition held and ratio <= 2
};

/// Time series of (unweighted) a, with the phase e^{band |D|} applied to
/// both a and G(a) before taking L~inf norms.
GSmallnessResult g_smallness_check(const std::vector<SpectralField3>& a_series, double band, AnisoBesovIndex idx,
                                   double eps_small);

}  // namespace alp
