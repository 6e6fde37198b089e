#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "alp/spectral/fft.hpp"

namespace alp::testing {

/// Samples f(x1, x2, x3) on the grid points and analyses it.
inline SpectralField3 sample(const Grid& g, const std::function<double(double, double, double)>& f) {
  std::vector<double> values(g.size());
  const double h1 = g.length / g.n1, h2 = g.length / g.n2, h3 = g.length / g.n3;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      for (int k = 0; k < g.n3; ++k) values[g.flat(i, j, k)] = f(i * h1, j * h2, k * h3);
  return from_physical(g, values);
}

/// Mean-square norm over grid points, computed in physical space.
inline double physical_l2(const SpectralField3& f) {
  double total = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    const PhysicalField p = to_physical(f, c);
    for (double x : p) total += x * x;
  }
  return std::sqrt(total / static_cast<double>(f.grid().size()));
}

inline double rel_diff(const SpectralField3& a, const SpectralField3& b) {
  const double scale = std::max(a.l2_norm(), b.l2_norm());
  return scale == 0.0 ? 0.0 : (a - b).l2_norm() / scale;
}

}  // namespace alp::testing
