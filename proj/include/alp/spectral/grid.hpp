#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

namespace alp {

/// Uniform periodic grid on the box [0, L)^3.
///
/// Coefficients are stored in FFT order along each axis: index i maps to the
/// integer wavenumber i for i < n/2 and to i - n otherwise, so wavenumbers
/// lie in [-n/2, n/2). The flat layout is row-major with axis 3 fastest.
struct Grid {
  int n1 = 32;
  int n2 = 32;
  int n3 = 32;
  double length = 2.0 * std::numbers::pi;

  static Grid cube(int n, double length = 2.0 * std::numbers::pi) {
    return Grid{n, n, n, length};
  }

  /// Throws PreconditionError unless every n is even and >= 8 and L > 0.
  void validate() const;

  std::size_t size() const {
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) *
           static_cast<std::size_t>(n3);
  }
  int extent(int axis) const { return axis == 0 ? n1 : (axis == 1 ? n2 : n3); }

  /// 2*pi / L: converts integer wavenumbers into physical ones.
  double wavenumber_scale() const { return 2.0 * std::numbers::pi / length; }

  static int wavenumber(int index, int n) { return index < n / 2 ? index : index - n; }
  static int index_of(int wavenumber, int n) { return wavenumber >= 0 ? wavenumber : wavenumber + n; }

  std::size_t flat(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * static_cast<std::size_t>(n2) +
            static_cast<std::size_t>(i2)) *
               static_cast<std::size_t>(n3) +
           static_cast<std::size_t>(i3);
  }
  /// Flat index of the integer wavevector xi (must lie in the grid's range).
  std::size_t flat_of(const std::array<int, 3>& xi) const {
    return flat(index_of(xi[0], n1), index_of(xi[1], n2), index_of(xi[2], n3));
  }
  bool contains(const std::array<int, 3>& xi) const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

enum class Direction { horizontal, vertical, isotropic };

/// Inclusive dyadic band range [first, last]; empty when first > last.
struct BandRange {
  int first = 0;
  int last = -1;
  bool empty() const { return first > last; }
  bool contains(int j) const { return j >= first && j <= last; }
  int count() const { return empty() ? 0 : last - first + 1; }
};

/// Up to two dyadic bands j with phi(2^-j rho) > 0 for a given radius rho.
struct BandWeights {
  int first = 0;
  std::array<double, 2> weight{0.0, 0.0};  // phi for bands first, first + 1
};

/// Per-grid precomputed wavevector data shared by all multipliers.
struct ModeTable {
  Grid grid;
  std::vector<std::array<int, 3>> xi;
  std::vector<double> radius_h;  // |xi_h| in physical units
  std::vector<double> radius_v;  // |xi_3|
  std::vector<double> radius;    // |xi|
  std::vector<BandWeights> bands_h;
  std::vector<BandWeights> bands_v;
  std::vector<BandWeights> bands_iso;
  std::vector<unsigned char> retained;  // 2/3-rule mask
  BandRange range_h;
  BandRange range_v;
  BandRange range_iso;
  double max_radius = 0.0;

  const std::vector<double>& radii(Direction d) const {
    return d == Direction::horizontal ? radius_h : (d == Direction::vertical ? radius_v : radius);
  }
  const std::vector<BandWeights>& bands(Direction d) const {
    return d == Direction::horizontal ? bands_h : (d == Direction::vertical ? bands_v : bands_iso);
  }
  BandRange range(Direction d) const {
    return d == Direction::horizontal ? range_h : (d == Direction::vertical ? range_v : range_iso);
  }
};

/// Cached, immutable mode table for `grid`; safe to call concurrently.
std::shared_ptr<const ModeTable> mode_table(const Grid& grid);

}  // namespace alp
