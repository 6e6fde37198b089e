#include "alp/spectral/operators.hpp"

#include "alp/error.hpp"

namespace alp {

namespace {

Complex ik(const ModeTable& t, std::size_t i, int axis) {
  return Complex(0.0, t.grid.wavenumber_scale() * t.xi[i][static_cast<std::size_t>(axis)]);
}

}  // namespace

SpectralField3 partial(const SpectralField3& f, int axis) {
  if (axis < 0 || axis > 2) throw PreconditionError("partial: axis must be 0, 1 or 2");
  const ModeTable& t = f.modes();
  return apply_multiplier(f, [&](std::size_t i) { return ik(t, i, axis); });
}

SpectralField3 grad_h(const SpectralField3& f) {
  require_scalar(f, "grad_h");
  return SpectralField3::stack(partial(f, 0), partial(f, 1), f.zeros_like());
}

SpectralField3 div_h(const SpectralField3& v) {
  require_vector(v, "div_h");
  const ModeTable& t = v.modes();
  SpectralField3 out(v.grid(), 1);
  auto dst = out.component(0);
  auto v1 = v.component(0);
  auto v2 = v.component(1);
  for (std::size_t i = 0; i < v.mode_count(); ++i) dst[i] = ik(t, i, 0) * v1[i] + ik(t, i, 1) * v2[i];
  return out;
}

SpectralField3 div(const SpectralField3& v) {
  require_vector(v, "div");
  return div_eps(v, 1.0);
}

SpectralField3 div_eps(const SpectralField3& w, double eps) {
  require_vector(w, "div_eps");
  const ModeTable& t = w.modes();
  SpectralField3 out(w.grid(), 1);
  auto dst = out.component(0);
  auto w1 = w.component(0);
  auto w2 = w.component(1);
  auto w3 = w.component(2);
  for (std::size_t i = 0; i < w.mode_count(); ++i) {
    dst[i] = ik(t, i, 0) * w1[i] + ik(t, i, 1) * w2[i] + eps * ik(t, i, 2) * w3[i];
  }
  return out;
}

double neg_laplacian_eps_symbol(const ModeTable& t, std::size_t i, double eps) {
  const double kh = t.radius_h[i];
  const double k3 = t.radius_v[i];
  return kh * kh + eps * eps * k3 * k3;
}

SpectralField3 laplacian_eps(const SpectralField3& f, double eps) {
  const ModeTable& t = f.modes();
  return apply_multiplier(f, [&](std::size_t i) { return -neg_laplacian_eps_symbol(t, i, eps); });
}

SpectralField3 inverse_neg_laplacian_eps(const SpectralField3& f, double eps) {
  const ModeTable& t = f.modes();
  return apply_multiplier(f, [&](std::size_t i) {
    const double mu = neg_laplacian_eps_symbol(t, i, eps);
    return mu > 0.0 ? 1.0 / mu : 0.0;
  });
}

SpectralField3 nabla_eps(const SpectralField3& f, double eps) {
  require_scalar(f, "nabla_eps");
  return SpectralField3::stack(partial(f, 0), partial(f, 1), eps * partial(f, 2));
}

SpectralField3 nabla_sup_eps(const SpectralField3& f, double eps) {
  require_scalar(f, "nabla_sup_eps");
  return SpectralField3::stack(partial(f, 0), partial(f, 1), (eps * eps) * partial(f, 2));
}

SpectralField3 leray_project(const SpectralField3& v) {
  require_vector(v, "leray_project");
  const ModeTable& t = v.modes();
  const double scale = t.grid.wavenumber_scale();
  SpectralField3 out = v;
  auto o1 = out.component(0);
  auto o2 = out.component(1);
  auto o3 = out.component(2);
  for (std::size_t i = 0; i < v.mode_count(); ++i) {
    const double k1 = scale * t.xi[i][0];
    const double k2 = scale * t.xi[i][1];
    const double k3 = scale * t.xi[i][2];
    const double kk = k1 * k1 + k2 * k2 + k3 * k3;
    if (kk == 0.0) continue;
    const Complex proj = (k1 * o1[i] + k2 * o2[i] + k3 * o3[i]) / kk;
    o1[i] -= k1 * proj;
    o2[i] -= k2 * proj;
    o3[i] -= k3 * proj;
  }
  return out;
}

SpectralField3 dealias(const SpectralField3& f) {
  const auto& keep = f.modes().retained;
  return apply_multiplier(f, [&](std::size_t i) { return keep[i] ? 1.0 : 0.0; });
}

bool is_dealiased(const SpectralField3& f) {
  const auto& keep = f.modes().retained;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t i = 0; i < f.mode_count(); ++i) {
      if (!keep[i] && comp[i] != Complex{}) return false;
    }
  }
  return true;
}

}  // namespace alp
