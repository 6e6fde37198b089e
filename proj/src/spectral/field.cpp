#include "alp/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alp/error.hpp"

namespace alp {

SpectralField3::SpectralField3(const Grid& grid, int components)
    : table_(mode_table(grid)), components_(components) {
  if (components != 1 && components != 3) {
    throw PreconditionError("field must have 1 or 3 components, got " + std::to_string(components));
  }
  coeffs_.assign(static_cast<std::size_t>(components) * grid.size(), Complex{});
}

std::span<Complex> SpectralField3::component(int c) {
  return std::span<Complex>(coeffs_).subspan(static_cast<std::size_t>(c) * mode_count(), mode_count());
}

std::span<const Complex> SpectralField3::component(int c) const {
  return std::span<const Complex>(coeffs_).subspan(static_cast<std::size_t>(c) * mode_count(), mode_count());
}

SpectralField3 SpectralField3::extract(int c) const {
  if (c < 0 || c >= components_) throw PreconditionError("component index out of range");
  SpectralField3 out(grid(), 1);
  std::ranges::copy(component(c), out.component(0).begin());
  return out;
}

SpectralField3 SpectralField3::stack(const SpectralField3& f1, const SpectralField3& f2, const SpectralField3& f3) {
  require_same_grid(f1, f2, "stack");
  require_same_grid(f1, f3, "stack");
  SpectralField3 out(f1.grid(), 3);
  out.set_component(0, f1);
  out.set_component(1, f2);
  out.set_component(2, f3);
  return out;
}

void SpectralField3::set_component(int c, const SpectralField3& scalar) {
  require_same_grid(*this, scalar, "set_component");
  require_scalar(scalar, "set_component");
  std::ranges::copy(scalar.component(0), component(c).begin());
}

SpectralField3& SpectralField3::operator+=(const SpectralField3& other) { return axpy(1.0, other); }

SpectralField3& SpectralField3::operator-=(const SpectralField3& other) { return axpy(-1.0, other); }

SpectralField3& SpectralField3::operator*=(double s) {
  for (auto& z : coeffs_) z *= s;
  return *this;
}

SpectralField3& SpectralField3::axpy(double s, const SpectralField3& other) {
  require_same_grid(*this, other, "axpy");
  if (components_ != other.components_) throw PreconditionError("axpy: component count mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  return *this;
}

double SpectralField3::l2_norm() const {
  double sum = 0.0;
  for (const auto& z : coeffs_) sum += std::norm(z);
  return std::sqrt(sum);
}

double SpectralField3::l2_norm(int c) const {
  double sum = 0.0;
  for (const auto& z : component(c)) sum += std::norm(z);
  return std::sqrt(sum);
}

double SpectralField3::hermitian_defect() const {
  const Grid& g = grid();
  double defect = 0.0;
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t i = 0; i < mode_count(); ++i) {
      const auto& xi = table_->xi[i];
      const std::array<int, 3> minus{-xi[0], -xi[1], -xi[2]};
      // Nyquist planes have no partner inside [-n/2, n/2); they wrap onto themselves.
      const std::size_t j = g.flat(Grid::index_of(minus[0], g.n1) % g.n1, Grid::index_of(minus[1], g.n2) % g.n2,
                                   Grid::index_of(minus[2], g.n3) % g.n3);
      defect = std::max(defect, std::abs(comp[i] - std::conj(comp[j])));
    }
  }
  return defect;
}

bool SpectralField3::is_zero() const {
  return std::ranges::all_of(coeffs_, [](const Complex& z) { return z == Complex{}; });
}

void require_same_grid(const SpectralField3& a, const SpectralField3& b, const char* what) {
  if (a.empty() || b.empty() || !(a.grid() == b.grid())) {
    throw PreconditionError(std::string(what) + ": fields must share one grid");
  }
}

void require_vector(const SpectralField3& f, const char* what) {
  if (!f.is_vector()) throw PreconditionError(std::string(what) + ": expected a vector field");
}

void require_scalar(const SpectralField3& f, const char* what) {
  if (f.components() != 1) throw PreconditionError(std::string(what) + ": expected a scalar field");
}

}  // namespace alp
