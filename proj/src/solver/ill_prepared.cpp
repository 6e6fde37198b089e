#include "alp/solver/ill_prepared.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "alp/error.hpp"
#include "alp/spectral/operators.hpp"

namespace alp {
namespace {

constexpr double kSignificant = 1e-14;
constexpr double kInterpolationTol = 1e-8;

double max_abs(const SpectralField3& f) {
  double m = 0.0;
  for (const Complex& z : f.data()) m = std::max(m, std::abs(z));
  return m;
}

bool try_reindex(const SpectralField3& f, double eps, SpectralField3& out) {
  const Grid& g = f.grid();
  const double floor = kSignificant * max_abs(f);
  out = f.zeros_like();
  for (int i1 = 0; i1 < g.n1; ++i1) {
    for (int i2 = 0; i2 < g.n2; ++i2) {
      for (int i3 = 0; i3 < g.n3; ++i3) {
        const int k3 = Grid::wavenumber(i3, g.n3);
        const double scaled = eps * k3;
        const double rounded = std::round(scaled);
        const bool integral = std::abs(scaled - rounded) < 1e-9;
        const std::size_t src = g.flat(i1, i2, i3);
        for (int c = 0; c < f.components(); ++c) {
          const Complex z = f.at(c, src);
          if (std::abs(z) <= floor) continue;
          if (!integral) return false;
          out.at(c, g.flat(i1, i2, Grid::index_of(static_cast<int>(rounded), g.n3))) += z;
        }
      }
    }
  }
  return true;
}

// Resamples every x3 column at eps x3 and re-analyses it on the grid.
SpectralField3 resample(const SpectralField3& f, double eps, double& error) {
  const Grid& g = f.grid();
  const int n = g.n3;
  const double s = g.wavenumber_scale();
  const double h = g.length / n;
  // phase[k][j]: exp(i s eps k x_j) at nodes (j < n) and midpoints (j >= n)
  std::vector<Complex> forward(static_cast<std::size_t>(n) * 2 * n);
  std::vector<Complex> grid_mode(static_cast<std::size_t>(n) * 2 * n);
  for (int i3 = 0; i3 < n; ++i3) {
    const int k = Grid::wavenumber(i3, n);
    for (int j = 0; j < 2 * n; ++j) {
      const double x = (j < n ? j : (j - n) + 0.5) * h;
      forward[static_cast<std::size_t>(i3) * 2 * n + j] = std::polar(1.0, s * eps * k * x);
      grid_mode[static_cast<std::size_t>(i3) * 2 * n + j] = std::polar(1.0, s * k * x);
    }
  }
  SpectralField3 out = f.zeros_like();
  double worst = 0.0, scale = 0.0;
  std::vector<Complex> samples(static_cast<std::size_t>(2 * n));
  for (int c = 0; c < f.components(); ++c) {
    for (int i1 = 0; i1 < g.n1; ++i1) {
      for (int i2 = 0; i2 < g.n2; ++i2) {
        std::fill(samples.begin(), samples.end(), Complex{});
        for (int i3 = 0; i3 < n; ++i3) {
          const Complex z = f.at(c, g.flat(i1, i2, i3));
          if (z == Complex{}) continue;
          for (int j = 0; j < 2 * n; ++j) samples[j] += z * forward[static_cast<std::size_t>(i3) * 2 * n + j];
        }
        for (int i3 = 0; i3 < n; ++i3) {
          Complex acc{};
          for (int j = 0; j < n; ++j) acc += samples[j] * std::conj(grid_mode[static_cast<std::size_t>(i3) * 2 * n + j]);
          out.at(c, g.flat(i1, i2, i3)) = acc / static_cast<double>(n);
        }
        for (int j = n; j < 2 * n; ++j) {
          Complex synth{};
          for (int i3 = 0; i3 < n; ++i3) {
            synth += out.at(c, g.flat(i1, i2, i3)) * grid_mode[static_cast<std::size_t>(i3) * 2 * n + j];
          }
          worst = std::max(worst, std::abs(synth - samples[j]));
        }
        for (const Complex& z : samples) scale = std::max(scale, std::abs(z));
      }
    }
  }
  error = scale > 0.0 ? worst / scale : 0.0;
  return out;
}

}  // namespace

SpectralField3 slow_vertical(const SpectralField3& f, double eps, double* interpolation_error) {
  if (!(eps > 0.0) || !(eps <= 1.0)) throw PreconditionError("slow_vertical: eps must lie in (0, 1]");
  SpectralField3 out;
  if (try_reindex(f, eps, out)) {
    if (interpolation_error) *interpolation_error = 0.0;
    return out;
  }
  double error = 0.0;
  out = resample(f, eps, error);
  if (interpolation_error) *interpolation_error = error;
  if (error > kInterpolationTol) {
    throw PreconditionError("slow_vertical: f(x_h, eps x3) is not representable on the grid (midpoint error " +
                            std::to_string(error) + ")");
  }
  return out;
}

IllPreparedData make_ill_prepared(const SpectralField3& a0, const SpectralField3& v0, const EpsParams& p) {
  require_scalar(a0, "make_ill_prepared: a0");
  require_vector(v0, "make_ill_prepared: v0");
  require_same_grid(a0, v0, "make_ill_prepared");
  IllPreparedData d;
  d.a0 = a0;
  d.v0 = leray_project(v0);
  double err_a = 0.0, err_v = 0.0;
  d.rho0 = p.density() * slow_vertical(d.a0, p.eps, &err_a);
  d.rho0.at(0) += 1.0;
  SpectralField3 slow_v = slow_vertical(d.v0, p.eps, &err_v);
  const double horizontal = std::pow(p.eps, 1.0 - p.alpha);
  const double vertical = std::pow(p.eps, -p.alpha);
  d.u0 = SpectralField3::stack(horizontal * slow_v.extract(0), horizontal * slow_v.extract(1),
                               vertical * slow_v.extract(2));
  d.interpolation_error = std::max(err_a, err_v);
  return d;
}

}  // namespace alp
