#pragma once

#include <functional>
#include <random>

#include "alp/spectral/field.hpp"

namespace alp {

using Rng = std::mt19937_64;

struct RandomFieldOptions {
  double envelope = 0.3;   // Gaussian coefficients carry exp(-envelope |xi|)
  double amplitude = 1.0;  // target L2 norm; <= 0 keeps the raw draw
  bool dealiased = true;
  bool zero_mean = true;
};

/// Weight applied to the Gaussian draw at mode `flat`; zero removes the mode.
using SpectralMask = std::function<double(const ModeTable&, std::size_t)>;

/// Keeps only modes with xi_h != 0 and xi_3 != 0, so every retained mode lies
/// in some anisotropic block (the torus stand-in for vanishing low frequencies).
double no_directional_means(const ModeTable& table, std::size_t flat);

/// Real (Hermitian-symmetric) random field. Nyquist planes are always zero.
SpectralField3 random_field(const Grid& grid, int components, Rng& rng, const RandomFieldOptions& opts,
                            const SpectralMask& mask = {});

inline SpectralField3 random_scalar(const Grid& grid, Rng& rng, const RandomFieldOptions& opts = {}) {
  return random_field(grid, 1, rng, opts);
}

/// Leray-projected random vector field, normalized after projection.
SpectralField3 random_solenoidal(const Grid& grid, Rng& rng, const RandomFieldOptions& opts = {},
                                 const SpectralMask& mask = {});

}  // namespace alp
