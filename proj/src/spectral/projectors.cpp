#include "alp/spectral/projectors.hpp"

#include "alp/spectral/cutoffs.hpp"

namespace alp {

double block_weight(const ModeTable& table, Direction d, int j, std::size_t flat) {
  const BandWeights& bw = table.bands(d)[flat];
  const int s = j - bw.first;
  return (s == 0 || s == 1) ? bw.weight[static_cast<std::size_t>(s)] : 0.0;
}

SpectralField3 block(const SpectralField3& f, Direction d, int j) {
  const ModeTable& table = f.modes();
  return apply_multiplier(f, [&](std::size_t i) { return block_weight(table, d, j, i); });
}

SpectralField3 lowpass(const SpectralField3& f, Direction d, int j) {
  const CutoffPair cut = build_cutoffs();
  const auto& rho = f.modes().radii(d);
  return apply_multiplier(f, [&](std::size_t i) { return cut.chi_band(j, rho[i]); });
}

SpectralField3 zero_part(const SpectralField3& f, Direction d) {
  const auto& rho = f.modes().radii(d);
  return apply_multiplier(f, [&](std::size_t i) { return rho[i] == 0.0 ? 1.0 : 0.0; });
}

BandRange band_range(const Grid& grid, Direction d) { return mode_table(grid)->range(d); }

}  // namespace alp
