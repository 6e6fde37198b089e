#include "alp/spectral/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "alp/error.hpp"
#include "alp/spectral/cutoffs.hpp"

namespace alp {

void Grid::validate() const {
  for (int axis = 0; axis < 3; ++axis) {
    const int n = extent(axis);
    if (n < 8 || n % 2 != 0) {
      throw PreconditionError("grid extent along axis " + std::to_string(axis + 1) +
                              " must be even and >= 8, got " + std::to_string(n));
    }
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw PreconditionError("grid box length must be positive");
  }
}

bool Grid::contains(const std::array<int, 3>& xi) const {
  for (int axis = 0; axis < 3; ++axis) {
    const int n = extent(axis);
    if (xi[axis] < -n / 2 || xi[axis] >= n / 2) return false;
  }
  return true;
}

namespace {

BandWeights band_weights(const CutoffPair& cut, double rho) {
  BandWeights out;
  if (rho <= 0.0) return out;
  const int base = static_cast<int>(std::floor(std::log2(rho))) - 2;
  bool found = false;
  for (int j = base; j <= base + 4; ++j) {
    const double w = cut.phi_band(j, rho);
    if (w <= 0.0) continue;
    if (!found) {
      out.first = j;
      out.weight[0] = w;
      found = true;
    } else if (j == out.first + 1) {
      out.weight[1] = w;
    }
  }
  return out;
}

void extend_range(BandRange& range, const BandWeights& bw) {
  for (int s = 0; s < 2; ++s) {
    if (bw.weight[s] <= 0.0) continue;
    const int j = bw.first + s;
    if (range.empty()) {
      range.first = range.last = j;
    } else {
      range.first = std::min(range.first, j);
      range.last = std::max(range.last, j);
    }
  }
}

std::shared_ptr<const ModeTable> build_table(const Grid& grid) {
  auto table = std::make_shared<ModeTable>();
  table->grid = grid;
  const std::size_t n = grid.size();
  table->xi.resize(n);
  table->radius_h.resize(n);
  table->radius_v.resize(n);
  table->radius.resize(n);
  table->bands_h.resize(n);
  table->bands_v.resize(n);
  table->bands_iso.resize(n);
  table->retained.resize(n);

  const CutoffPair cut = build_cutoffs();
  const double scale = grid.wavenumber_scale();
  for (int i1 = 0; i1 < grid.n1; ++i1) {
    for (int i2 = 0; i2 < grid.n2; ++i2) {
      for (int i3 = 0; i3 < grid.n3; ++i3) {
        const std::size_t f = grid.flat(i1, i2, i3);
        const std::array<int, 3> xi{Grid::wavenumber(i1, grid.n1), Grid::wavenumber(i2, grid.n2),
                                    Grid::wavenumber(i3, grid.n3)};
        table->xi[f] = xi;
        const double k1 = scale * xi[0];
        const double k2 = scale * xi[1];
        const double k3 = scale * xi[2];
        table->radius_h[f] = std::sqrt(k1 * k1 + k2 * k2);
        table->radius_v[f] = std::abs(k3);
        table->radius[f] = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
        table->bands_h[f] = band_weights(cut, table->radius_h[f]);
        table->bands_v[f] = band_weights(cut, table->radius_v[f]);
        table->bands_iso[f] = band_weights(cut, table->radius[f]);
        extend_range(table->range_h, table->bands_h[f]);
        extend_range(table->range_v, table->bands_v[f]);
        extend_range(table->range_iso, table->bands_iso[f]);
        table->max_radius = std::max(table->max_radius, table->radius[f]);
        table->retained[f] = (3 * std::abs(xi[0]) <= grid.n1 && 3 * std::abs(xi[1]) <= grid.n2 &&
                              3 * std::abs(xi[2]) <= grid.n3)
                                 ? 1
                                 : 0;
      }
    }
  }
  return table;
}

}  // namespace

std::shared_ptr<const ModeTable> mode_table(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int, double>, std::shared_ptr<const ModeTable>> cache;
  grid.validate();
  const auto key = std::make_tuple(grid.n1, grid.n2, grid.n3, grid.length);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = build_table(grid);
  cache.emplace(key, table);
  return table;
}

}  // namespace alp
