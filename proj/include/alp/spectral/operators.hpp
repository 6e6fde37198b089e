#pragma once

#include "alp/spectral/field.hpp"

namespace alp {

// Differential operators are exact diagonal Fourier multipliers. Operators on
// a scalar act on every component of a vector input.

/// d/dx_axis (axis 0, 1, 2).
SpectralField3 partial(const SpectralField3& f, int axis);
inline SpectralField3 d3(const SpectralField3& f) { return partial(f, 2); }

/// (d1 f, d2 f, 0) for a scalar f.
SpectralField3 grad_h(const SpectralField3& f);
/// d1 v1 + d2 v2.
SpectralField3 div_h(const SpectralField3& v);
SpectralField3 div(const SpectralField3& v);

/// Delta_eps = Delta_h + eps^2 d3^2.
SpectralField3 laplacian_eps(const SpectralField3& f, double eps);
/// (-Delta_eps)^{-1}; the zero wavevector maps to 0.
SpectralField3 inverse_neg_laplacian_eps(const SpectralField3& f, double eps);
/// nabla_eps = (nabla_h, eps d3) of a scalar.
SpectralField3 nabla_eps(const SpectralField3& f, double eps);
/// nabla^eps = (nabla_h, eps^2 d3) of a scalar.
SpectralField3 nabla_sup_eps(const SpectralField3& f, double eps);
/// nabla_eps . w = d1 w1 + d2 w2 + eps d3 w3.
SpectralField3 div_eps(const SpectralField3& w, double eps);

/// Symbol of -Delta_eps at mode `flat`: |xi_h|^2 + eps^2 xi_3^2.
double neg_laplacian_eps_symbol(const ModeTable& table, std::size_t flat, double eps);

/// Orthogonal projection onto divergence-free fields; the zero mode is kept.
SpectralField3 leray_project(const SpectralField3& v);

/// 2/3 rule: zero every mode with some |xi_axis| > n_axis / 3.
SpectralField3 dealias(const SpectralField3& f);
bool is_dealiased(const SpectralField3& f);

}  // namespace alp
