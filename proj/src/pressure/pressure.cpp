#include "alp/pressure/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "alp/error.hpp"
#include "alp/paraproduct/composition.hpp"
#include "alp/spectral/fft.hpp"
#include "alp/spectral/operators.hpp"

namespace alp {
namespace {

void require_solenoidal(const SpectralField3& v) {
  require_vector(v, "pressure");
  if (div(v).l2_norm() > 1e-8 * v.l2_norm()) throw PreconditionError("pressure: velocity is not divergence free");
}

SpectralField3 horizontal(const SpectralField3& v) {
  return SpectralField3::stack(v.extract(0), v.extract(1), SpectralField3(v.grid()));
}

// -(-Delta_eps)^{-1} nabla_eps . (G nabla_eps q)
SpectralField3 coefficient_term(const SpectralField3& G, const SpectralField3& q, double eps) {
  return -1.0 * inverse_neg_laplacian_eps(div_eps(scale_pointwise(G, nabla_eps(q, eps)), eps), eps);
}

struct DataTerms {
  SpectralField3 q2, q3, q4, q51, q52, q53, q54;
};

DataTerms data_terms(const SpectralField3& G, const SpectralField3& v, const EpsParams& p, bool advection = true) {
  const double eps = p.eps;
  const double adv = advection ? p.advection() : 0.0;
  const SpectralField3 v1 = v.extract(0), v2 = v.extract(1), v3 = v.extract(2);
  auto inv = [&](const SpectralField3& f) { return inverse_neg_laplacian_eps(f, eps); };
  DataTerms t;
  // div_h div_h (v^h (x) v^h) = sum_{i,j <= 2} d_i d_j (v_i v_j)
  const SpectralField3 v11 = multiply(v1, v1), v12 = multiply(v1, v2), v22 = multiply(v2, v2);
  const SpectralField3 dd = partial(partial(v11, 0), 0) + 2.0 * partial(partial(v12, 0), 1) + partial(partial(v22, 1), 1);
  t.q2 = adv * inv(dd);
  const SpectralField3 v3vh = SpectralField3::stack(multiply(v3, v1), multiply(v3, v2), SpectralField3(v.grid()));
  t.q3 = (2.0 * adv) * inv(d3(div_h(v3vh)));
  t.q4 = (-2.0 * adv) * inv(d3(multiply(v3, div_h(v))));

  const SpectralField3 vh = horizontal(v);
  const SpectralField3 lap_h_vh = laplacian_eps(vh, 0.0);
  const SpectralField3 vert_vh = (eps * eps) * d3(d3(vh));
  t.q51 = inv(div_h(scale_pointwise(G, lap_h_vh)));
  t.q52 = inv(div_h(scale_pointwise(G, vert_vh)));
  t.q53 = inv(d3(multiply(G, laplacian_eps(v3, 0.0))));
  t.q54 = inv(d3(multiply(G, (eps * eps) * d3(d3(v3)))));
  return t;
}

SpectralField3 density_G(const SpectralField3& a, const EpsParams& p) {
  require_scalar(a, "pressure: density");
  return compose_G(p.density() * a);
}

}  // namespace

void PressureConfig::validate() const {
  if (max_iters < 1) throw PreconditionError("pressure: max_iters must be >= 1");
  if (!(tol > 0.0)) throw PreconditionError("pressure: tol must be positive");
  if (!(relaxation > 0.0 && relaxation <= 1.0)) throw PreconditionError("pressure: relaxation must lie in (0, 1]");
}

namespace {

double residual_with(const SpectralField3& G, const SpectralField3& v, const SpectralField3& q, double eps,
                     double adv) {
  SpectralField3 one_minus_G = -1.0 * G;
  one_minus_G.at(0) += 1.0;
  const SpectralField3 lhs = -1.0 * div(scale_pointwise(one_minus_G, nabla_sup_eps(q, eps)));
  SpectralField3 rhs = -1.0 * div(scale_pointwise(one_minus_G, laplacian_eps(v, eps)));
  if (adv != 0.0) rhs.axpy(adv, div(advect(v, v)));
  const double scale = rhs.l2_norm();
  const double diff = (lhs - rhs).l2_norm();
  if (scale == 0.0) return diff == 0.0 ? 0.0 : diff / std::max(lhs.l2_norm(), 1e-300);
  return diff / scale;
}

}  // namespace

double pressure_residual(const SpectralField3& G, const SpectralField3& v, const SpectralField3& q,
                         const EpsParams& p) {
  return residual_with(G, v, q, p.eps, p.advection());
}

PressureSolution pressure_solve_with_G(const SpectralField3& G, const SpectralField3& v, const EpsParams& p,
                                       const PressureConfig& cfg) {
  cfg.validate();
  require_solenoidal(v);
  require_scalar(G, "pressure: G");
  require_same_grid(G, v, "pressure");
  const double eps = p.eps;
  const double adv = cfg.advection ? p.advection() : 0.0;
  const PhysicalField g_values = to_physical(G);

  // rhs = div(w), w = adv v.grad v - (1 - G) Delta_eps v
  const SpectralField3 lap = laplacian_eps(v, eps);
  SpectralField3 w = scale_pointwise(g_values, lap) - dealias(lap);
  if (adv != 0.0) w.axpy(adv, advect(v, v));
  const SpectralField3 rhs = div(w);
  const double rhs_norm = rhs.l2_norm();

  PressureSolution s;
  s.q = SpectralField3(v.grid());
  if (rhs_norm <= 1e-12 * w.modes().max_radius * w.l2_norm()) {
    s.residual_history.push_back(0.0);
    return s;
  }
  const DataTerms d = data_terms(G, v, p, cfg.advection);
  const SpectralField3 source = d.q2 + d.q3 + d.q4 + d.q51 + d.q52 + d.q53 + d.q54;

  // G nabla_eps q serves both the residual and the next iterate
  SpectralField3 g_grad;
  auto residual = [&](const SpectralField3& q) {
    g_grad = scale_pointwise(g_values, nabla_eps(q, eps));
    SpectralField3 flux = dealias(nabla_sup_eps(q, eps));
    flux.axpy(-1.0, SpectralField3::stack(g_grad.extract(0), g_grad.extract(1), eps * g_grad.extract(2)));
    return (-1.0 * div(flux) - rhs).l2_norm() / rhs_norm;
  };

  s.q = d.q2 + d.q3 + d.q4;  // the a = 0 solution
  s.q.at(0) = 0.0;
  s.iters = 1;
  s.residual = residual(s.q);
  s.residual_history.push_back(s.residual);
  while (s.residual > cfg.tol) {
    if (s.iters >= cfg.max_iters) {
      std::ostringstream msg;
      msg << "pressure: no convergence after " << s.iters << " iterations, residual " << s.residual;
      throw ConvergenceError(msg.str());
    }
    SpectralField3 next = -1.0 * inverse_neg_laplacian_eps(div_eps(g_grad, eps), eps) + source;
    if (cfg.relaxation != 1.0) next = (1.0 - cfg.relaxation) * s.q + cfg.relaxation * next;
    next.at(0) = 0.0;
    s.q = std::move(next);
    ++s.iters;
    s.residual = residual(s.q);
    s.residual_history.push_back(s.residual);
  }
  return s;
}

PressureSolution pressure_solve(const SpectralField3& a, const SpectralField3& v, const EpsParams& p,
                                const PressureConfig& cfg) {
  require_same_grid(a, v, "pressure");
  return pressure_solve_with_G(density_G(a, p), v, p, cfg);
}

PressureTerms pressure_terms(const SpectralField3& a, const SpectralField3& v, const SpectralField3& q,
                             const EpsParams& p) {
  require_same_grid(a, v, "pressure_terms");
  require_solenoidal(v);
  const SpectralField3 G = density_G(a, p);
  DataTerms d = data_terms(G, v, p);
  PressureTerms t;
  t.q1 = coefficient_term(G, q, p.eps);
  t.q2 = std::move(d.q2);
  t.q3 = std::move(d.q3);
  t.q4 = std::move(d.q4);
  t.q51 = std::move(d.q51);
  t.q52 = std::move(d.q52);
  t.q53 = std::move(d.q53);
  t.q54 = std::move(d.q54);
  t.q5 = t.q51 + t.q52 + t.q53 + t.q54;
  return t;
}

PressureMonitor::PressureMonitor(const Grid& grid, const EpsParams& params)
    : params_(params), grad_h_(grid, 3), grad_eps_(grid, 3) {}

void PressureMonitor::accumulate(const SpectralField3& q, double band, double dt, int iters, double residual) {
  grad_h_.accumulate(block_norms(grad_h(q), band), dt);
  grad_eps_.accumulate(block_norms(nabla_eps(q, params_.eps), band), dt);
  pending_iters_ = iters;
  pending_residual_ = residual;
}

double PressureMonitor::y_norm() const {
  const double g = params_.gamma;
  return grad_h_.norm(TimeExponent::one, {-1.0, 0.5}) + grad_eps_.norm(TimeExponent::one, {-1.0 + g, 0.5 - g});
}

double PressureMonitor::z_norm() const {
  const double g = params_.gamma;
  return grad_eps_.norm(TimeExponent::one, {g, 0.5 - g}) + grad_eps_.norm(TimeExponent::one, {-g, 0.5 + g});
}

void PressureMonitor::record(double t_end, double theta, double psi) {
  const double e = params_.eps, a = params_.alpha, b = params_.beta, g = params_.gamma;
  const double y = y_norm(), z = z_norm();
  const double y_scale = std::max(std::pow(e, b - a - 2 * g), std::pow(e, 1 - 2 * a - 2 * g)) * theta * psi;
  const double y_lhs = std::pow(e, 1 - a) * y;
  const double z_lhs = std::pow(e, 2 * a + g) * z;
  if (y_lhs > 0.0 && y_scale > 0.0) y_constant_ = std::max(y_constant_, y_lhs / y_scale);
  if (z_lhs > 0.0 && psi > 0.0) z_constant_ = std::max(z_constant_, z_lhs / (psi * psi));
  rows_.push_back({t_end, pending_residual_, y, z, pending_iters_});
}

void PressureMonitor::write_csv(std::ostream& out) const {
  out << "t,iters,residual,Y_norm_partial,Z_norm_partial\n" << std::setprecision(17);
  for (const Row& r : rows_) out << r.t << ',' << r.iters << ',' << r.residual << ',' << r.y << ',' << r.z << '\n';
}

}  // namespace alp
