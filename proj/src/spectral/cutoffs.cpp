#include "alp/spectral/cutoffs.hpp"

#include <cmath>

namespace alp {
namespace {

double bump_primitive(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double CutoffPair::chi(double tau) const {
  tau = std::abs(tau);
  if (tau <= kPhiInner) return 1.0;
  if (tau >= kChiOuter) return 0.0;
  const double t = (tau - kPhiInner) / (kChiOuter - kPhiInner);
  const double up = bump_primitive(1.0 - t);
  return up / (up + bump_primitive(t));
}

double CutoffPair::phi(double tau) const { return chi(0.5 * tau) - chi(tau); }

double CutoffPair::phi_band(int j, double tau) const { return phi(std::ldexp(tau, -j)); }

double CutoffPair::chi_band(int j, double tau) const { return chi(std::ldexp(tau, -j)); }

CutoffPair build_cutoffs() { return CutoffPair{}; }

}  // namespace alp
