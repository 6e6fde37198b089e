#include <cmath>
#include <limits>

#include "alp/error.hpp"
#include "alp/solver/solver.hpp"

namespace alp {

namespace {

double ratio(double num, double den) {
  if (num <= 0.0) return 0.0;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

void BootstrapMonitor::observe(const DiagnosticsRecord& r, const EpsParams& p) {
  const double psi = r.psi.total();
  const double theta_scale = 4.0 * std::pow(p.eps, p.gamma) * data.x2;
  const double psi_scale = 4.0 * (data.x1 + data.x3);
  implied_constant = std::max({implied_constant, ratio(r.theta, theta_scale), ratio(psi, psi_scale)});
  if (first_violation) return;
  if (r.theta > theta_threshold) {
    first_violation = BootstrapViolation{r.t, "theta", r.theta, theta_threshold};
  } else if (psi > K0) {
    first_violation = BootstrapViolation{r.t, "psi", psi, K0};
  }
}

TransportReport transport_estimate_monitor(const PsiAccumulators& acc, const SpectralField3& a0, double delta,
                                           double lambda, const EpsParams& p) {
  if (!(lambda > 0.0)) throw PreconditionError("transport monitor: lambda must be positive");
  const double g = p.gamma;
  const double adv = p.advection();
  const BlockNorms data_blocks = block_norms(a0, delta);
  const auto inf = TimeExponent::infinity;
  const auto one = TimeExponent::one;
  auto lhs = [&](AnisoBesovIndex idx) { return acc.a.norm(inf, idx); };
  auto vh = [&](AnisoBesovIndex idx) { return acc.v.norm(one, idx, kHorizontalComponents); };

  const AnisoBesovIndex base{1.0, 0.5}, low{1.0 - g, 0.5 + g}, high{1.0 + g, 0.5 - g}, top{g, 1.5 - g};
  const double l_base = lhs(base), l_low = lhs(low), l_high = lhs(high), l_top = lhs(top);

  TransportReport report;
  auto add = [&](AnisoBesovIndex idx, double l, double bracket) {
    TransportEntry e;
    e.index = idx;
    e.lhs = l;
    e.data = data_blocks.besov(idx);
    e.bracket = bracket;
    e.implied_constant = ratio(l - e.data, bracket);
    report.max_implied_constant = std::max(report.max_implied_constant, e.implied_constant);
    report.entries.push_back(e);
  };
  add(base, l_base, (1.0 / lambda + adv * acc.v.norm(one, {2.0, 0.5})) * l_base);
  add(low, l_low, (l_low + l_base) / lambda + adv * vh({2.0 - g, 0.5 + g}) * l_base);
  add(high, l_high, (l_high + l_base) / lambda + adv * vh({2.0 + g, 0.5 - g}) * l_base);
  add(top, l_top,
      l_top / lambda + adv * (vh({1.0, 1.5}) * l_high + acc.v.norm(one, {1.0 + g, 1.5 - g}) * l_base));
  return report;
}

double epsilon_zero(double C, double K0, double delta, double x2_norm, double beta, double gamma, double eps_small) {
  if (!(C > 0.0 && K0 > 0.0 && delta > 0.0 && x2_norm > 0.0 && beta > 0.0 && gamma > 0.0 && eps_small > 0.0)) {
    throw PreconditionError("epsilon_zero: all inputs must be positive");
  }
  if (!(beta > gamma)) throw PreconditionError("epsilon_zero: beta must exceed gamma");
  const double t1 = std::pow(eps_small / K0, 1.0 / beta);
  const double t2 = std::pow(1.0 / (2.0 * C * K0), 1.0 / (beta - gamma));
  const double t3 = std::pow(1.0 / (8.0 * C * K0), 1.0 / gamma);
  const double t4 = std::pow(delta / (16.0 * C * C * x2_norm), 1.0 / gamma);
  return std::min({t1, t2, t3, t4});
}

}  // namespace alp
