#pragma once

#include <span>
#include <vector>

#include "alp/spectral/field.hpp"

namespace alp {

/// Grid-point samples of a real field, row-major with axis 3 fastest.
using PhysicalField = std::vector<double>;

/// Real part of the synthesis sum_xi coeff(xi) exp(i xi.x) at the grid points.
PhysicalField to_physical(const SpectralField3& f, int component = 0);

/// Analysis of grid samples; coefficients are divided by the point count.
SpectralField3 from_physical(const Grid& grid, std::span<const double> values);

/// Overwrites component c of `out` with the analysis of `values`.
void from_physical_into(SpectralField3& out, int component, std::span<const double> values);

/// Pointwise product of two scalar fields, truncated by the 2/3 rule.
SpectralField3 multiply(const SpectralField3& a, const SpectralField3& b);

/// Scalar s times every component of f, pointwise and truncated by the 2/3 rule.
SpectralField3 scale_pointwise(const SpectralField3& s, const SpectralField3& f);
/// Same with s given by its grid-point samples.
SpectralField3 scale_pointwise(std::span<const double> s_values, const SpectralField3& f);

/// (v . grad) f for a vector v and a scalar or vector f, truncated by the 2/3 rule.
SpectralField3 advect(const SpectralField3& v, const SpectralField3& f);

}  // namespace alp
