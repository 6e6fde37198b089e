#include "alp/semigroup/eps_params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alp/error.hpp"

namespace alp {

double EpsParams::advection() const { return std::pow(eps, 1.0 - alpha); }
double EpsParams::density() const { return std::pow(eps, beta); }

double gamma_bound(double alpha, double beta) { return std::min((beta - 2.0 * alpha) / 5.0, (1.0 - 3.0 * alpha) / 5.0); }

void validate_parameter_range(const EpsParams& p) {
  std::ostringstream why;
  if (!(p.eps > 0.0 && p.eps <= 1.0)) why << "eps must lie in (0, 1]; ";
  if (!(p.alpha > 0.0 && p.alpha < 1.0 / 3.0)) why << "alpha must lie in (0, 1/3); ";
  if (!(p.beta > 2.0 * p.alpha)) why << "beta must exceed 2 alpha; ";
  if (!(p.gamma > 0.0 && p.gamma < gamma_bound(p.alpha, p.beta)))
    why << "gamma must lie in (0, min((beta - 2 alpha)/5, (1 - 3 alpha)/5)); ";
  const std::string msg = why.str();
  if (!msg.empty()) throw PreconditionError("parameters outside the admissible range: " + msg);
}

std::vector<std::string> satisfied_constraints(const EpsParams& p) {
  const double a = p.alpha, b = p.beta, g = p.gamma;
  std::vector<std::string> out;
  if (a > 0 && a < 1.0 / 3.0 && b > 2 * a && g > 0 && g < gamma_bound(a, b))
    out.push_back("global: gamma < min((beta-2alpha)/5, (1-3alpha)/5)");
  if (a > 0 && a < 0.5 && b > a && g > 0 && g < std::min((b - a) / 2, (1 - 2 * a) / 4))
    out.push_back("theta_estimate: gamma < min((beta-alpha)/2, (1-2alpha)/4)");
  if (a > 0 && a < 1.0 / 3.0 && b > 2 * a && g > 0 && g <= std::min((b - 2 * a) / 2, (1 - 3 * a) / 4))
    out.push_back("psi_estimate: gamma <= min((beta-2alpha)/2, (1-3alpha)/4)");
  if (a > 0 && a < 0.5 && b > a && g > 0 && g <= 0.5 * std::min(b - a, 1 - 2 * a))
    out.push_back("pressure_Y: gamma <= min(beta-alpha, 1-2alpha)/2");
  if (a > 0 && a < 1 && b > a && g > 0 && g <= std::min((b - a) / 4, (1 - a) / 3))
    out.push_back("pressure_Z: gamma <= min((beta-alpha)/4, (1-alpha)/3)");
  if (g > 0 && g <= std::min({(b - a) / 4, (b - 2 * a) / 3, (1 - 3 * a) / 5}))
    out.push_back("bootstrap: gamma <= min((beta-alpha)/4, (beta-2alpha)/3, (1-3alpha)/5)");
  return out;
}

}  // namespace alp
