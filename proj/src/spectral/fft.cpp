#include "alp/spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "alp/error.hpp"
#include "alp/spectral/operators.hpp"

namespace alp {
namespace {

// FFTW's planner is not thread-safe; plans are built once per shape under a
// lock and then executed with per-call buffers through the new-array API.
// FFTW_ESTIMATE keeps the chosen algorithm, and therefore every rounding
// pattern, identical from run to run. Transforms are real-to-complex on the
// half spectrum k3 in [0, n3/2].
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PlanPair plans_for(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(grid.n1, grid.n2, grid.n3);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const std::size_t half = static_cast<std::size_t>(grid.n1) * grid.n2 * (grid.n3 / 2 + 1);
  std::vector<double> r(grid.size());
  std::vector<Complex> c(half);
  auto* cc = reinterpret_cast<fftw_complex*>(c.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_3d(grid.n1, grid.n2, grid.n3, r.data(), cc, flags);
  p.backward = fftw_plan_dft_c2r_3d(grid.n1, grid.n2, grid.n3, cc, r.data(), flags);
  if (!p.forward || !p.backward) throw NumericalError("FFTW planning failed");
  cache.emplace(key, p);
  return p;
}

std::size_t half_flat(const Grid& g, int i1, int i2, int i3) {
  return (static_cast<std::size_t>(i1) * g.n2 + static_cast<std::size_t>(i2)) * (g.n3 / 2 + 1) +
         static_cast<std::size_t>(i3);
}

}  // namespace

PhysicalField to_physical(const SpectralField3& f, int component) {
  const Grid& g = f.grid();
  const PlanPair plans = plans_for(g);
  auto src = f.component(component);
  const int h3 = g.n3 / 2 + 1;
  // Hermitian part (c(xi) + conj c(-xi)) / 2, whose synthesis is the real part
  std::vector<Complex> in(static_cast<std::size_t>(g.n1) * g.n2 * h3);
  for (int i1 = 0; i1 < g.n1; ++i1) {
    const int m1 = (g.n1 - i1) % g.n1;
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const int m2 = (g.n2 - i2) % g.n2;
      for (int i3 = 0; i3 < h3; ++i3) {
        const int m3 = (g.n3 - i3) % g.n3;
        in[half_flat(g, i1, i2, i3)] = 0.5 * (src[g.flat(i1, i2, i3)] + std::conj(src[g.flat(m1, m2, m3)]));
      }
    }
  }
  PhysicalField values(g.size());
  fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex*>(in.data()), values.data());
  return values;
}

void from_physical_into(SpectralField3& out, int component, std::span<const double> values) {
  const Grid& g = out.grid();
  if (values.size() != g.size()) throw PreconditionError("from_physical: sample count does not match grid");
  const PlanPair plans = plans_for(g);
  std::vector<double> in(values.begin(), values.end());
  const int h3 = g.n3 / 2 + 1;
  std::vector<Complex> res(static_cast<std::size_t>(g.n1) * g.n2 * h3);
  fftw_execute_dft_r2c(plans.forward, in.data(), reinterpret_cast<fftw_complex*>(res.data()));
  const double inv = 1.0 / static_cast<double>(g.size());
  auto dst = out.component(component);
  for (int i1 = 0; i1 < g.n1; ++i1) {
    const int m1 = (g.n1 - i1) % g.n1;
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const int m2 = (g.n2 - i2) % g.n2;
      for (int i3 = 0; i3 < h3; ++i3) {
        const Complex z = res[half_flat(g, i1, i2, i3)] * inv;
        dst[g.flat(i1, i2, i3)] = z;
        if (i3 > 0 && i3 < h3 - 1) dst[g.flat(m1, m2, g.n3 - i3)] = std::conj(z);
      }
    }
  }
}

SpectralField3 from_physical(const Grid& grid, std::span<const double> values) {
  SpectralField3 out(grid, 1);
  from_physical_into(out, 0, values);
  return out;
}

SpectralField3 multiply(const SpectralField3& a, const SpectralField3& b) {
  require_same_grid(a, b, "multiply");
  require_scalar(a, "multiply");
  require_scalar(b, "multiply");
  PhysicalField pa = to_physical(a);
  const PhysicalField pb = to_physical(b);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  return dealias(from_physical(a.grid(), pa));
}

SpectralField3 scale_pointwise(const SpectralField3& s, const SpectralField3& f) {
  require_same_grid(s, f, "scale_pointwise");
  require_scalar(s, "scale_pointwise");
  return scale_pointwise(to_physical(s), f);
}

SpectralField3 scale_pointwise(std::span<const double> ps, const SpectralField3& f) {
  if (ps.size() != f.grid().size()) throw PreconditionError("scale_pointwise: sample count does not match grid");
  SpectralField3 out = f.zeros_like();
  for (int c = 0; c < f.components(); ++c) {
    PhysicalField pf = to_physical(f, c);
    for (std::size_t i = 0; i < pf.size(); ++i) pf[i] *= ps[i];
    from_physical_into(out, c, pf);
  }
  return dealias(out);
}

SpectralField3 advect(const SpectralField3& v, const SpectralField3& f) {
  require_same_grid(v, f, "advect");
  require_vector(v, "advect");
  const Grid& g = v.grid();
  std::vector<PhysicalField> pv;
  for (int j = 0; j < 3; ++j) pv.push_back(to_physical(v, j));
  SpectralField3 out = f.zeros_like();
  for (int c = 0; c < f.components(); ++c) {
    const SpectralField3 fc = f.extract(c);
    PhysicalField acc(g.size(), 0.0);
    for (int j = 0; j < 3; ++j) {
      const PhysicalField d = to_physical(partial(fc, j));
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pv[static_cast<std::size_t>(j)][i] * d[i];
    }
    from_physical_into(out, c, acc);
  }
  return dealias(out);
}

}  // namespace alp
