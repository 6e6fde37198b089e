#pragma once

#include <string>
#include <vector>

namespace alp {

/// Scaling parameter eps and exponents (alpha, beta, gamma) of the rescaled system.
struct EpsParams {
  double eps = 0.1;
  double alpha = 0.1;
  double beta = 0.5;
  double gamma = 0.02;

  /// eps^{1 - alpha}, the advection prefactor.
  double advection() const;
  /// eps^beta, the density prefactor.
  double density() const;
};

/// Upper bound on gamma for the global result: min((beta - 2 alpha)/5, (1 - 3 alpha)/5).
double gamma_bound(double alpha, double beta);

/// Throws PreconditionError unless 0 < eps <= 1, 0 < alpha < 1/3, beta > 2 alpha and
/// 0 < gamma < gamma_bound(alpha, beta).
void validate_parameter_range(const EpsParams& p);

/// Names of the parameter constraint sets (global result, theta and Psi
/// estimates, pressure estimates, bootstrap) that p satisfies; logged with each run.
std::vector<std::string> satisfied_constraints(const EpsParams& p);

}  // namespace alp
