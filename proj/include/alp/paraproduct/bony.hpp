#pragma once

#include <array>
#include <utility>
#include <vector>

#include "alp/spectral/field.hpp"

namespace alp {

/// Paraproduct splittings of the dealiased product ab along one direction:
///   T(a,b)    = sum_j S_{j-1}a Delta_j b
///   Tbar(a,b) = T(b,a)
///   R(a,b)    = sum_j Delta_j a (Delta_{j-1} + Delta_j + Delta_{j+1}) b
///   alt_R     = sum_j Delta_j a S_{j+2} b
/// so that ab = T + R + Tbar = T + alt_R.
///
/// On the torus the product of the two zero-frequency parts (rho_d = 0) is
/// seen by no dyadic block; it is carried by R and alt_R so both identities
/// hold exactly.
struct BonyPieces {
  SpectralField3 T;
  SpectralField3 R;
  SpectralField3 Tbar;
  SpectralField3 alt_T;
  SpectralField3 alt_R;
};

enum class BonyPiece { T = 0, R = 1, Tbar = 2 };

/// Scalar fields on the same grid. All pieces are dealiased.
BonyPieces bony(const SpectralField3& a, const SpectralField3& b, Direction d);

/// Horizontal-then-vertical splitting: pieces[h][v] is X^h Y^v(a,b) with
/// X, Y indexed by BonyPiece. The nine pieces sum to ab.
using DoubleBonyPieces = std::array<std::array<SpectralField3, 3>, 3>;
DoubleBonyPieces double_bony(const SpectralField3& a, const SpectralField3& b);

/// The terms S_{j-1}a Delta_j b of T(a,b) along direction d, band by band
/// (dealiased). Used to check frequency localization.
std::vector<std::pair<int, SpectralField3>> paraproduct_terms(const SpectralField3& a, const SpectralField3& b,
                                                              Direction d);

}  // namespace alp
