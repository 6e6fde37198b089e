#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "alp/spectral/grid.hpp"

namespace alp {

using Complex = std::complex<double>;

/// Fourier coefficients of a scalar (1 component) or vector (3 components)
/// field on a periodic grid.
///
/// Normalization: f(x) = sum_xi coeff(xi) exp(i xi.x), so the mean of f is
/// coeff(0) and the normalized L2 norm (mean over the torus) is
/// sqrt(sum |coeff|^2). A unit-amplitude cos(x1) has norm 1/sqrt(2).
class SpectralField3 {
 public:
  SpectralField3() = default;
  explicit SpectralField3(const Grid& grid, int components = 1);

  const Grid& grid() const { return table_->grid; }
  const ModeTable& modes() const { return *table_; }
  const std::shared_ptr<const ModeTable>& mode_table_ptr() const { return table_; }
  int components() const { return components_; }
  bool is_vector() const { return components_ == 3; }
  std::size_t mode_count() const { return table_ ? table_->grid.size() : 0; }
  bool empty() const { return !table_; }

  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;
  Complex& at(int c, std::size_t flat) { return coeffs_[static_cast<std::size_t>(c) * mode_count() + flat]; }
  const Complex& at(int c, std::size_t flat) const {
    return coeffs_[static_cast<std::size_t>(c) * mode_count() + flat];
  }
  Complex& at(std::size_t flat) { return coeffs_[flat]; }
  const Complex& at(std::size_t flat) const { return coeffs_[flat]; }
  std::span<Complex> data() { return coeffs_; }
  std::span<const Complex> data() const { return coeffs_; }

  /// Scalar field holding component c.
  SpectralField3 extract(int c) const;
  /// Vector field from three scalar fields on the same grid.
  static SpectralField3 stack(const SpectralField3& f1, const SpectralField3& f2, const SpectralField3& f3);
  void set_component(int c, const SpectralField3& scalar);

  SpectralField3 zeros_like() const { return SpectralField3(grid(), components_); }

  SpectralField3& operator+=(const SpectralField3& other);
  SpectralField3& operator-=(const SpectralField3& other);
  SpectralField3& operator*=(double s);
  /// this += s * other
  SpectralField3& axpy(double s, const SpectralField3& other);

  friend SpectralField3 operator+(SpectralField3 a, const SpectralField3& b) { return a += b; }
  friend SpectralField3 operator-(SpectralField3 a, const SpectralField3& b) { return a -= b; }
  friend SpectralField3 operator*(double s, SpectralField3 a) { return a *= s; }
  friend SpectralField3 operator*(SpectralField3 a, double s) { return a *= s; }

  /// Normalized L2 norm; for vectors the Euclidean norm over components.
  double l2_norm() const;
  double l2_norm(int c) const;
  /// max |coeff(xi) - conj(coeff(-xi))| over all modes and components.
  double hermitian_defect() const;
  bool is_zero() const;

 private:
  std::shared_ptr<const ModeTable> table_;
  int components_ = 1;
  std::vector<Complex> coeffs_;
};

/// Throws PreconditionError unless both fields live on the same grid.
void require_same_grid(const SpectralField3& a, const SpectralField3& b, const char* what);
void require_vector(const SpectralField3& f, const char* what);
void require_scalar(const SpectralField3& f, const char* what);

/// coeff(xi) <- m(flat) * coeff(xi) for every component.
template <typename Multiplier>
SpectralField3 apply_multiplier(const SpectralField3& f, Multiplier&& m) {
  SpectralField3 out = f;
  const std::size_t n = f.mode_count();
  for (int c = 0; c < f.components(); ++c) {
    auto dst = out.component(c);
    for (std::size_t i = 0; i < n; ++i) dst[i] *= m(i);
  }
  return out;
}

}  // namespace alp
