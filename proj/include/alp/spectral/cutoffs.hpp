#pragma once

namespace alp {

/// Radial Littlewood-Paley profiles.
///
/// chi is a C-infinity step equal to 1 on [0, 3/4] and 0 on [4/3, inf), built
/// from the exp(-1/t) bump primitive; phi(tau) = chi(tau/2) - chi(tau) is then
/// supported in [3/4, 8/3] and the dyadic sums telescope:
///   sum_{j in Z} phi(2^-j tau) = 1 for tau > 0,
///   chi(tau) + sum_{j >= 0} phi(2^-j tau) = 1 for tau >= 0.
class CutoffPair {
 public:
  static constexpr double kPhiInner = 3.0 / 4.0;
  static constexpr double kPhiOuter = 8.0 / 3.0;
  static constexpr double kChiOuter = 4.0 / 3.0;

  double chi(double tau) const;
  double phi(double tau) const;
  /// phi(2^-j tau), chi(2^-j tau) with exact power-of-two scaling.
  double phi_band(int j, double tau) const;
  double chi_band(int j, double tau) const;
};

CutoffPair build_cutoffs();

}  // namespace alp
