#include "alp/spectral/random_field.hpp"

#include <cmath>

#include "alp/spectral/operators.hpp"

namespace alp {

namespace {

bool on_nyquist_plane(const Grid& g, const std::array<int, 3>& xi) {
  return xi[0] == -g.n1 / 2 || xi[1] == -g.n2 / 2 || xi[2] == -g.n3 / 2;
}

void normalize(SpectralField3& f, double amplitude) {
  if (amplitude <= 0.0) return;
  const double norm = f.l2_norm();
  if (norm > 0.0) f *= amplitude / norm;
}

}  // namespace

double no_directional_means(const ModeTable& table, std::size_t flat) {
  return table.radius_h[flat] > 0.0 && table.radius_v[flat] > 0.0 ? 1.0 : 0.0;
}

SpectralField3 random_field(const Grid& grid, int components, Rng& rng, const RandomFieldOptions& opts,
                            const SpectralMask& mask) {
  SpectralField3 raw(grid, components);
  const ModeTable& t = raw.modes();
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int c = 0; c < components; ++c) {
    auto comp = raw.component(c);
    for (std::size_t i = 0; i < raw.mode_count(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      double w = std::exp(-opts.envelope * t.radius[i]);
      if (mask) w *= mask(t, i);
      if (on_nyquist_plane(grid, t.xi[i])) w = 0.0;
      if (opts.dealiased && !t.retained[i]) w = 0.0;
      if (opts.zero_mean && t.radius[i] == 0.0) w = 0.0;
      comp[i] = w * Complex(re, im);
    }
  }
  SpectralField3 out(grid, components);
  for (int c = 0; c < components; ++c) {
    auto src = raw.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < out.mode_count(); ++i) {
      const auto& xi = t.xi[i];
      if (on_nyquist_plane(grid, xi)) continue;
      const std::size_t j = grid.flat_of({-xi[0], -xi[1], -xi[2]});
      dst[i] = 0.5 * (src[i] + std::conj(src[j]));
    }
  }
  normalize(out, opts.amplitude);
  return out;
}

SpectralField3 random_solenoidal(const Grid& grid, Rng& rng, const RandomFieldOptions& opts,
                                 const SpectralMask& mask) {
  RandomFieldOptions raw = opts;
  raw.amplitude = 0.0;
  SpectralField3 v = leray_project(random_field(grid, 3, rng, raw, mask));
  normalize(v, opts.amplitude);
  return v;
}

}  // namespace alp
