#include "alp/solver/solver.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "alp/error.hpp"
#include "alp/paraproduct/composition.hpp"
#include "alp/semigroup/heat.hpp"
#include "alp/spectral/fft.hpp"
#include "alp/spectral/operators.hpp"
#include "alp/spectral/snapshot.hpp"

namespace alp {

namespace {

void require_band(double band, double t) {
  if (band < 0.0) {
    std::ostringstream msg;
    msg << "analyticity band exhausted at t = " << t << " (band " << band << ")";
    throw BandExhaustedError(msg.str());
  }
}

double relative_divergence(const SpectralField3& v) {
  const double norm = v.l2_norm();
  return norm > 0.0 ? div(v).l2_norm() / norm : 0.0;
}

}  // namespace

SolverState initial_state(const SpectralField3& a0, const SpectralField3& v0, const RunConfig& cfg) {
  require_scalar(a0, "initial_state: a0");
  require_vector(v0, "initial_state: v0");
  require_same_grid(a0, v0, "initial_state");
  if (!(a0.grid() == cfg.grid)) throw PreconditionError("initial_state: data grid differs from the configured grid");
  SolverState s;
  s.a = a0;
  s.v = leray_project(v0);
  s.q = SpectralField3(cfg.grid);
  s.phase = PhaseState{cfg.delta, cfg.lambda, 0.0, cfg.eps.gamma};
  s.psi_acc = PsiAccumulators{NormAccumulator(cfg.grid, 1), NormAccumulator(cfg.grid, 3)};
  return s;
}

double theta_dot(const BlockNorms& b, const EpsParams& p) {
  const double e = p.eps, g = p.gamma;
  const double lift = std::pow(e, 1.0 + g);
  const double horizontal = b.besov({1.0, 0.5}, kHorizontalComponents) +
                            b.besov({1.0 - g, 0.5 + g}, kHorizontalComponents) +
                            b.besov({1.0 + g, 0.5 - g}, kHorizontalComponents) +
                            lift * b.besov({-g, 1.5 + g}, kHorizontalComponents);
  const double vertical = b.besov({1.0, 0.5}, kVerticalComponent) + b.besov({1.0 + g, 0.5 - g}, kVerticalComponent) +
                          lift * b.besov({-g, 1.5 + g}, kVerticalComponent);
  return p.advection() * horizontal + std::pow(e, g) * vertical;
}

double theta_dot(const SolverState& state, const EpsParams& p) {
  const double band = state.phase.band();
  require_band(band, state.t);
  return theta_dot(block_norms(state.v, band), p);
}

PsiValues psi_values(const PsiAccumulators& acc, const EpsParams& p) {
  const double e = p.eps, al = p.alpha, g = p.gamma;
  PsiValues out;
  const auto inf = TimeExponent::infinity;
  out.psi1 = acc.a.norm(inf, {1.0, 0.5}) + acc.a.norm(inf, {1.0 + g, 0.5 - g}) + acc.a.norm(inf, {1.0 - g, 0.5 + g}) +
             std::pow(e, 3 * al + 3 * g) * acc.a.norm(inf, {g, 1.5 - g});
  out.psi2 = acc.v.norm(inf, {0.0, 0.5}) + acc.v.norm(inf, {g, 0.5 - g}) + acc.v.norm(inf, {-g, 0.5 + g});

  // base group at sigma = m, then eps^lift times the group at (0, 1/2 + m)
  auto group = [&](TimeExponent p_exp, double m, double lift, ComponentRange r) {
    return acc.v.norm(p_exp, {m, 0.5}, r) + acc.v.norm(p_exp, {m + g, 0.5 - g}, r) +
           acc.v.norm(p_exp, {m - g, 0.5 + g}, r) +
           lift * (acc.v.norm(p_exp, {0.0, 0.5 + m}, r) + acc.v.norm(p_exp, {g, 0.5 + m - g}, r) +
                   acc.v.norm(p_exp, {-g, 0.5 + m + g}, r));
  };
  const double e2 = e * e;
  out.psi3 = std::pow(e, 2 * al + 2 * g) * group(TimeExponent::one, 2.0, e2, kHorizontalComponents) +
             group(TimeExponent::one, 2.0, e2, kVerticalComponent);
  out.psi4 = std::pow(e, al + g) * group(TimeExponent::two, 1.0, e, kHorizontalComponents) +
             group(TimeExponent::two, 1.0, e, kVerticalComponent);
  return out;
}

StepStart evaluate(SolverState& state, const RunConfig& cfg) {
  const EpsParams& p = cfg.eps;
  StepStart s;
  s.band = state.phase.band();
  require_band(s.band, state.t);
  s.a_blocks = block_norms(state.a, s.band);
  s.v_blocks = block_norms(state.v, s.band);
  s.theta_dot = theta_dot(s.v_blocks, p);

  const SpectralField3 scaled = p.density() * state.a;
  s.min_density = min_one_plus(scaled);
  s.G = cfg.flags.density_coupling ? compose_G(scaled) : SpectralField3(cfg.grid);

  if (cfg.flags.pressure) {
    PressureConfig pc = cfg.pressure;
    pc.advection = cfg.flags.nonlinear;
    PressureSolution sol = pressure_solve_with_G(s.G, state.v, p, pc);
    state.q = std::move(sol.q);
    s.pressure_iters = sol.iters;
    s.pressure_residual = sol.residual;
  } else {
    state.q = SpectralField3(cfg.grid);
  }

  state.psi_acc.a.observe(s.a_blocks);
  state.psi_acc.v.observe(s.v_blocks);
  state.theta_history.push_back({state.t, state.phase.theta, s.theta_dot});
  return s;
}

void advance(SolverState& state, const StepStart& start, double dt, const RunConfig& cfg) {
  if (!(dt > 0.0)) throw PreconditionError("advance: dt must be positive");
  const EpsParams& p = cfg.eps;
  const double eps = p.eps;

  const double theta_next = state.phase.theta + dt * start.theta_dot;
  require_band(state.phase.delta - state.phase.lambda * theta_next, state.t + dt);

  const double adv = cfg.flags.nonlinear ? p.advection() : 0.0;
  SpectralField3 a_next = state.a;
  SpectralField3 forcing(cfg.grid, 3);
  if (adv != 0.0) {
    a_next.axpy(-dt * adv, advect(state.v, state.a));
    forcing.axpy(-adv, advect(state.v, state.v));
  }
  if (cfg.flags.density_coupling) forcing -= scale_pointwise(start.G, laplacian_eps(state.v, eps));
  if (cfg.flags.pressure) {
    const SpectralField3 grad_q = nabla_sup_eps(state.q, eps);
    if (cfg.flags.density_coupling) {
      SpectralField3 inv_density = -1.0 * start.G;  // 1/(1 + r) = 1 - G(r)
      inv_density.at(0) += 1.0;
      forcing -= scale_pointwise(inv_density, grad_q);
    } else {
      forcing -= grad_q;
    }
  }
  SpectralField3 v_next = heat_apply(state.v, dt, eps);
  if (!forcing.is_zero()) v_next += phi1_apply(forcing, dt, eps);

  state.psi_acc.a.accumulate(start.a_blocks, dt);
  state.psi_acc.v.accumulate(start.v_blocks, dt);
  state.a = std::move(a_next);
  state.v = leray_project(v_next);
  state.phase.theta = theta_next;
  state.t += dt;
}

SolverState step(SolverState state, double dt, const RunConfig& cfg) {
  const StepStart start = evaluate(state, cfg);
  advance(state, start, dt, cfg);
  return state;
}

const char* const kDiagnosticsHeader =
    "t,theta,band,psi1,psi2,psi3,psi4,psi,energy,div_residual,pressure_iters,pressure_residual,min_density";

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  out << kDiagnosticsHeader << '\n' << std::setprecision(17);
  for (const auto& r : records) {
    out << r.t << ',' << r.theta << ',' << r.band << ',' << r.psi.psi1 << ',' << r.psi.psi2 << ',' << r.psi.psi3 << ','
        << r.psi.psi4 << ',' << r.psi.total() << ',' << r.energy << ',' << r.div_residual << ',' << r.pressure_iters
        << ',' << r.pressure_residual << ',' << r.min_density << '\n';
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::completed:
      return "completed";
    case Verdict::band_exhausted:
      return "band_exhausted";
    case Verdict::density_lost:
      return "density_lost";
    case Verdict::pressure_failed:
      return "pressure_failed";
  }
  return "unknown";
}

double RunResult::max_theta() const {
  double m = 0.0;
  for (const auto& r : records) m = std::max(m, r.theta);
  return m;
}

namespace {

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json RunResult::verdict_json() const {
  nlohmann::json j = {{"verdict", to_string(verdict)}, {"t_halt", t_halt}};
  if (!halt_reason.empty()) j["reason"] = halt_reason;
  if (bootstrap.first_violation) {
    const auto& v = *bootstrap.first_violation;
    j["first_bootstrap_violation"] = {
        {"t", v.t}, {"quantity", v.quantity}, {"value", v.value}, {"threshold", v.threshold}};
  } else {
    j["first_bootstrap_violation"] = nullptr;
  }
  return j;
}

nlohmann::json RunResult::monitors_json() const {
  nlohmann::json transport_entries = nlohmann::json::array();
  for (const auto& e : transport.entries) {
    transport_entries.push_back({{"sigma", e.index.sigma},
                                 {"s", e.index.s},
                                 {"lhs", e.lhs},
                                 {"data", e.data},
                                 {"bracket", e.bracket},
                                 {"implied_constant", finite_or_null(e.implied_constant)}});
  }
  return {{"max_theta", max_theta()},
          {"data_norms", {{"x1", bootstrap.data.x1}, {"x2", bootstrap.data.x2}, {"x3", bootstrap.data.x3}}},
          {"bootstrap",
           {{"C", bootstrap.C},
            {"theta_threshold", bootstrap.theta_threshold},
            {"K0", bootstrap.K0},
            {"implied_constant", finite_or_null(bootstrap.implied_constant)}}},
          {"epsilon_zero", epsilon_zero},
          {"constraints_satisfied", constraints},
          {"transport",
           {{"entries", transport_entries}, {"max_implied_constant", finite_or_null(transport.max_implied_constant)}}},
          {"pressure",
           {{"Y_norm", pressure.y_norm()},
            {"Z_norm", pressure.z_norm()},
            {"Y_implied_constant", pressure.y_constant()},
            {"Z_implied_constant", pressure.z_constant()}}}};
}

RunResult run(const RunConfig& cfg) {
  cfg.validate();
  const SpectralField3 a0 = make_profile(cfg.a0, cfg.grid, 1, cfg.seed, 0);
  const SpectralField3 v0 = make_profile(cfg.v0, cfg.grid, 3, cfg.seed, 1);
  return run(cfg, a0, v0);
}

RunResult run(const RunConfig& cfg, const SpectralField3& a0, const SpectralField3& v0) {
  cfg.validate();
  const EpsParams& p = cfg.eps;
  RunResult result;
  result.config = cfg;
  result.constraints = satisfied_constraints(p);

  SolverState state = initial_state(a0, v0, cfg);
  result.bootstrap.C = cfg.bootstrap_C;
  result.bootstrap.data = x_norms(state.a, state.v, cfg.delta, p.gamma);
  result.bootstrap.theta_threshold = 4.0 * cfg.bootstrap_C * std::pow(p.eps, p.gamma) * result.bootstrap.data.x2;
  result.bootstrap.K0 = 4.0 * cfg.bootstrap_C * (result.bootstrap.data.x1 + result.bootstrap.data.x3);
  if (result.bootstrap.K0 > 0.0 && result.bootstrap.data.x2 > 0.0 && cfg.delta > 0.0 && p.beta > p.gamma) {
    result.epsilon_zero = epsilon_zero(cfg.bootstrap_C, result.bootstrap.K0, cfg.delta, result.bootstrap.data.x2,
                                       p.beta, p.gamma, cfg.eps_small);
  }
  result.pressure = PressureMonitor(cfg.grid, p);

  const std::filesystem::path dir = cfg.output_dir;
  const bool write = !cfg.output_dir.empty();
  if (write) std::filesystem::create_directories(dir);
  int snapshot_index = 0;
  double next_snapshot = 0.0;
  auto maybe_snapshot = [&](bool force) {
    if (!write || cfg.snapshot_interval <= 0.0) return;
    if (!force && state.t + 1e-12 < next_snapshot) return;
    std::ostringstream stem;
    stem << "snapshot_" << std::setw(4) << std::setfill('0') << snapshot_index++;
    write_snapshot(dir / (stem.str() + "_a.bin"), state.a, state.t);
    write_snapshot(dir / (stem.str() + "_v.bin"), state.v, state.t);
    while (next_snapshot <= state.t + 1e-12) next_snapshot += cfg.snapshot_interval;
  };

  const int steps = cfg.steps();
  double halted_at = -1.0;
  for (int n = 0;; ++n) {
    StepStart start;
    try {
      start = evaluate(state, cfg);
    } catch (const DensityPositivityError& e) {
      result.verdict = Verdict::density_lost;
      result.halt_reason = e.what();
      break;
    } catch (const ConvergenceError& e) {
      result.verdict = Verdict::pressure_failed;
      result.halt_reason = e.what();
      break;
    } catch (const BandExhaustedError& e) {
      result.verdict = Verdict::band_exhausted;
      result.halt_reason = e.what();
      break;
    }
    DiagnosticsRecord r;
    r.t = state.t;
    r.theta = state.phase.theta;
    r.band = start.band;
    r.psi = psi_values(state.psi_acc, p);
    r.energy = state.v.l2_norm() * state.v.l2_norm();
    r.div_residual = relative_divergence(state.v);
    r.pressure_iters = start.pressure_iters;
    r.pressure_residual = start.pressure_residual;
    r.min_density = start.min_density;
    result.bootstrap.observe(r, p);
    result.records.push_back(r);
    maybe_snapshot(n == 0);
    if (n >= steps) break;

    const double t_next = std::min(cfg.t_end, (n + 1) * cfg.dt);
    const double dt = t_next - state.t;
    result.pressure.accumulate(state.q, start.band, dt, start.pressure_iters, start.pressure_residual);
    try {
      advance(state, start, dt, cfg);
    } catch (const BandExhaustedError& e) {
      result.verdict = Verdict::band_exhausted;
      result.halt_reason = e.what();
      halted_at = t_next;
      break;
    }
    state.t = t_next;
    result.pressure.record(state.t, state.phase.theta, psi_values(state.psi_acc, p).total());
  }
  result.t_halt = halted_at >= 0.0 ? halted_at : state.t;
  result.theta_history = state.theta_history;
  result.transport = transport_estimate_monitor(state.psi_acc, a0, cfg.delta, cfg.lambda, p);
  result.final_state = std::move(state);

  if (write) {
    auto open = [&](const char* name) {
      std::ofstream out(dir / name);
      if (!out) throw IoError(std::string("cannot write ") + (dir / name).string());
      return out;
    };
    open("config.json") << to_json(cfg).dump(2) << '\n';
    {
      auto out = open("diagnostics.csv");
      write_diagnostics_csv(out, result.records);
    }
    {
      auto out = open("pressure.csv");
      result.pressure.write_csv(out);
    }
    open("monitors.json") << result.monitors_json().dump(2) << '\n';
    open("verdict.json") << result.verdict_json().dump(2) << '\n';
  }
  return result;
}

}  // namespace alp
