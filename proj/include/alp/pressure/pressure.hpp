#pragma once

#include <iosfwd>
#include <vector>

#include "alp/norms/chemin_lerner.hpp"
#include "alp/semigroup/eps_params.hpp"

namespace alp {

struct PressureConfig {
  int max_iters = 50;
  double tol = 1e-10;       // relative residual
  double relaxation = 1.0;  // omega in (0, 1]
  bool advection = true;    // false drops the eps^{1-alpha} div(v.grad v) source

  /// Throws PreconditionError for out-of-range settings.
  void validate() const;
};

struct PressureSolution {
  SpectralField3 q;
  int iters = 0;  // fixed-point evaluations, the a = 0 start included
  double residual = 0.0;
  std::vector<double> residual_history;
};

/// Solves -div((1/(1 + eps^beta a)) grad^eps q) = eps^{1-alpha} div(v.grad v)
///   - div((1/(1 + eps^beta a)) Delta_eps v)
/// by the fixed point q <- (1 - w) q + w (q1(q) + q2 + q3 + q4 + q5), where
/// q1(q) = -(-Delta_eps)^{-1} nabla_eps . (G nabla_eps q), G = G(eps^beta a), and
/// q2..q5 are the data terms of pressure_terms. Starts from the a = 0 solution;
/// q has zero mean. When the right-hand side is at round-off level relative
/// to the field it differentiates, q = 0 is returned with iters = 0. Throws ConvergenceError after cfg.max_iters evaluations above
/// tolerance, DensityPositivityError when 1 + eps^beta a <= 0 somewhere, and
/// PreconditionError when ||div v|| > 1e-8 ||v||.
PressureSolution pressure_solve(const SpectralField3& a, const SpectralField3& v, const EpsParams& params,
                                const PressureConfig& cfg = {});

/// Same with G = G(eps^beta a) supplied (dealiased).
PressureSolution pressure_solve_with_G(const SpectralField3& G, const SpectralField3& v, const EpsParams& params,
                                       const PressureConfig& cfg = {});

/// ||-div((1 - G) grad^eps q) - eps^{1-alpha} div(v.grad v) + div((1 - G) Delta_eps v)||
/// relative to the norm of the right-hand side, assembled directly from the
/// divergence form with dealiased products. 0 when both sides vanish.
double pressure_residual(const SpectralField3& G, const SpectralField3& v, const SpectralField3& q,
                         const EpsParams& params);

/// Terms of the pressure splitting (dealiased products, zero mean):
///   q1 = -(-D)^{-1} nabla_eps.(G nabla_eps q)
///   q2 = eps^{1-alpha} (-D)^{-1} div_h div_h (v^h (x) v^h)
///   q3 = 2 eps^{1-alpha} (-D)^{-1} d3 div_h (v^3 v^h)
///   q4 = -2 eps^{1-alpha} (-D)^{-1} d3 (v^3 div_h v^h)
///   q5 = (-D)^{-1} div(G Delta_eps v) = q51 + q52 + q53 + q54 with
///   q51 = (-D)^{-1} div_h(G Delta_h v^h), q52 = (-D)^{-1} div_h(G eps^2 d3^2 v^h),
///   q53 = (-D)^{-1} d3(G Delta_h v^3),    q54 = (-D)^{-1} d3(G eps^2 d3^2 v^3)
/// where D = Delta_eps.
struct PressureTerms {
  SpectralField3 q1, q2, q3, q4, q5;
  SpectralField3 q51, q52, q53, q54;
};

PressureTerms pressure_terms(const SpectralField3& a, const SpectralField3& v, const SpectralField3& q,
                             const EpsParams& params);

/// Running pressure norms of a solver run with phase Phi(t) = band(t) |xi|:
///   Y_t = ||grad_h q_Phi||_{L1_t(B^{-1,1/2})} + ||nabla_eps q_Phi||_{L1_t(B^{-1+g,1/2-g})}
///   Z_t = ||nabla_eps q_Phi||_{L1_t(B^{g,1/2-g})} + ||nabla_eps q_Phi||_{L1_t(B^{-g,1/2+g})}
/// and the implied constants
///   Y: eps^{1-alpha} Y_t / (max(eps^{beta-alpha-2g}, eps^{1-2alpha-2g}) theta(t) Psi(t))
///   Z: eps^{2alpha+g} Z_t / Psi(t)^2
/// maximized over the recorded times (0/0 counts as 0).
class PressureMonitor {
 public:
  PressureMonitor() = default;
  PressureMonitor(const Grid& grid, const EpsParams& params);

  /// q held over [t, t + dt) with phase band `band`.
  void accumulate(const SpectralField3& q, double band, double dt, int iters, double residual);
  /// Closes the step ending at t_end with the bootstrap quantities at that time.
  void record(double t_end, double theta, double psi);

  double y_norm() const;
  double z_norm() const;
  double y_constant() const { return y_constant_; }
  double z_constant() const { return z_constant_; }

  /// CSV with header t,iters,residual,Y_norm_partial,Z_norm_partial.
  void write_csv(std::ostream& out) const;

 private:
  struct Row {
    double t, residual, y, z;
    int iters;
  };
  EpsParams params_;
  NormAccumulator grad_h_;
  NormAccumulator grad_eps_;
  int pending_iters_ = 0;
  double pending_residual_ = 0.0;
  double y_constant_ = 0.0;
  double z_constant_ = 0.0;
  std::vector<Row> rows_;
};

}  // namespace alp
