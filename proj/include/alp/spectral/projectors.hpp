#pragma once

#include "alp/spectral/field.hpp"

namespace alp {

/// Dyadic block: multiplier phi(2^-j rho_d(xi)) where rho_d is |xi_h|, |xi_3|
/// or |xi| according to `d`.
SpectralField3 block(const SpectralField3& f, Direction d, int j);

/// Low-pass: multiplier chi(2^-j rho_d(xi)). Carries the direction's
/// zero-frequency part (chi(0) = 1).
SpectralField3 lowpass(const SpectralField3& f, Direction d, int j);

/// Part of f with rho_d(xi) = 0: the x_h-mean (a function of x3) for the
/// horizontal direction, the x3-mean for the vertical one, the global mean
/// isotropically. No dyadic block sees it.
SpectralField3 zero_part(const SpectralField3& f, Direction d);

inline SpectralField3 h_block(const SpectralField3& f, int k) { return block(f, Direction::horizontal, k); }
inline SpectralField3 v_block(const SpectralField3& f, int l) { return block(f, Direction::vertical, l); }
inline SpectralField3 iso_block(const SpectralField3& f, int j) { return block(f, Direction::isotropic, j); }
inline SpectralField3 h_lowpass(const SpectralField3& f, int k) { return lowpass(f, Direction::horizontal, k); }
inline SpectralField3 v_lowpass(const SpectralField3& f, int l) { return lowpass(f, Direction::vertical, l); }
inline SpectralField3 iso_lowpass(const SpectralField3& f, int j) { return lowpass(f, Direction::isotropic, j); }

/// Bands j for which block(., d, j) can be nonzero on this grid.
BandRange band_range(const Grid& grid, Direction d);

/// Block multiplier phi(2^-j rho) for mode `flat`, read from the mode table.
double block_weight(const ModeTable& table, Direction d, int j, std::size_t flat);

}  // namespace alp
