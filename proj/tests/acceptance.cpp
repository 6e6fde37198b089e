// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "alp/error.hpp"
#include "alp/semigroup/heat.hpp"
#include "alp/solver/solver.hpp"
#include "alp/spectral/cutoffs.hpp"
#include "alp/spectral/operators.hpp"
#include "alp/spectral/random_field.hpp"
#include "alp/stats.hpp"
#include "alp/verify/suites.hpp"
#include "alp/verify/sweep.hpp"

using namespace alp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel_diff(const SpectralField3& a, const SpectralField3& ref) {
  const double n = ref.l2_norm();
  return n == 0.0 ? (a - ref).l2_norm() : (a - ref).l2_norm() / n;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

Outcome suite_outcome(const std::string& name, const SuiteOptions& o = {}) {
  const SuiteReport r = run_suite(name, o);
  std::string detail = "max " + fmt(r.max_ratio) + ", median " + fmt(r.median_ratio);
  for (const CaseResult& c : r.cases) {
    if (!c.pass) detail += "; failed " + c.label;
  }
  return {r.pass, detail};
}

Outcome cutoffs() {
  const CutoffPair cut = build_cutoffs();
  double worst = 0.0;
  bool support = true;
  for (int i = 0; i < 10000; ++i) {
    const double tau = std::pow(10.0, -3.0 + 6.0 * i / 9999.0);
    double full = 0.0, inhom = cut.chi(tau);
    for (int j = -20; j <= 20; ++j) {
      const double p = cut.phi_band(j, tau);
      full += p;
      if (j >= 0) inhom += p;
    }
    worst = std::max({worst, std::abs(full - 1.0), std::abs(inhom - 1.0)});
    const double phi = cut.phi(tau), chi = cut.chi(tau);
    if ((tau < CutoffPair::kPhiInner || tau > CutoffPair::kPhiOuter) && phi != 0.0) support = false;
    if (tau <= CutoffPair::kPhiInner && chi != 1.0) support = false;
    if (tau >= CutoffPair::kChiOuter && chi != 0.0) support = false;
    if (phi < 0.0 || chi < 0.0 || chi > 1.0) support = false;
  }
  return {worst < 1e-12 && support, "partition defect " + fmt(worst) + (support ? ", supports hold" : ", support violated")};
}

RunConfig smooth_config(int n, double dt, double t_end) {
  RunConfig c;
  c.grid = Grid::cube(n);
  c.eps = {0.1, 0.1, 0.5, 0.02};
  c.delta = 1.0;
  c.lambda = 1.0;
  c.dt = dt;
  c.t_end = t_end;
  c.a0.kind = "mode";
  c.a0.amplitude = 0.5;
  c.v0.kind = "roll";
  c.v0.amplitude = 0.5;
  return c;
}

Outcome solver_correctness() {
  // linear limit: the exponential integrator reproduces the heat semigroup
  RunConfig lin = smooth_config(32, 0.01, 1.0);
  lin.flags.nonlinear = false;
  lin.lambda = 1e-6;
  Rng rng(11);
  const SpectralField3 v0 = random_solenoidal(lin.grid, rng);
  SolverState s = initial_state(SpectralField3(lin.grid), v0, lin);
  double t = 0.0, stokes = 0.0;
  for (double dt : {0.013, 0.2, 0.05, 0.0071}) {
    s = step(std::move(s), dt, lin);
    t += dt;
    stokes = std::max(stokes, rel_diff(s.v, heat_apply(v0, t, lin.eps.eps)));
  }

  // temporal order against a fine reference
  const double h = 0.005, T = 0.2;
  auto final_v = [&](double dt) {
    const RunConfig c = smooth_config(16, dt, T);
    const RunResult r = run(c);
    if (r.verdict != Verdict::completed) throw NumericalError("order run halted: " + r.halt_reason);
    return r.final_state.v;
  };
  const SpectralField3 ref = final_v(h / 16.0);
  std::vector<double> lx, ly;
  for (double dt : {4.0 * h, 2.0 * h, h}) {
    lx.push_back(std::log(dt));
    ly.push_back(std::log(rel_diff(final_v(dt), ref)));
  }
  const double order = fit_line(lx, ly).slope;

  // incompressibility over a long run
  const RunResult longrun = run(smooth_config(32, 0.002, 1.0));
  double div_max = 0.0;
  for (const DiagnosticsRecord& r : longrun.records) div_max = std::max(div_max, r.div_residual);
  const bool long_ok = longrun.verdict == Verdict::completed && longrun.records.size() == 501;

  const bool pass = stokes < 1e-12 && order >= 0.8 && order <= 1.2 && div_max < 1e-8 && long_ok;
  return {pass, "Stokes defect " + fmt(stokes) + ", order " + fmt(order) + ", max div " + fmt(div_max) + " over " +
                    std::to_string(longrun.records.size() - 1) + " steps (" + to_string(longrun.verdict) + ")"};
}

Outcome theta_scaling() {
  RunConfig base = smooth_config(32, 0.01, 1.0);
  const SweepReport r = eps_sweep(base, {0.2, 0.1, 0.05, 0.025});
  bool bands = true, psi_bounded = true, constants_logged = true;
  for (const SweepMember& m : r.members) {
    bands = bands && m.min_band > 0.0;
    psi_bounded = psi_bounded && std::isfinite(m.max_psi);
    constants_logged = constants_logged && std::isfinite(m.bootstrap_implied_constant);
  }
  const bool pass = r.all_completed && bands && psi_bounded && constants_logged && !r.degenerate && r.slope_within_band;
  std::string violations;
  for (const SweepMember& m : r.members) {
    if (m.first_violation) violations += " eps=" + fmt(m.eps) + ":" + m.first_violation->quantity;
  }
  return {pass, "slope " + fmt(r.slope) + " (gamma " + fmt(r.gamma) + " +- 0.3), all completed " +
                    (r.all_completed ? "yes" : "no") + ", bootstrap implied constant " + fmt(r.bootstrap_rescale) +
                    (violations.empty() ? ", no violation at C = 1" : ", violations at C = 1:" + violations)};
}

Outcome determinism() {
  std::vector<std::pair<std::string, SuiteOptions>> runs;
  SuiteOptions small;
  small.grid = 16;
  small.trials = 5;
  small.seed = 3;
  for (const auto& name : suite_names()) runs.push_back({name, small});
  int mismatches = 0;
  for (const auto& [name, o] : runs) {
    const std::string a = numeric_fields(run_suite(name, o).to_json()).dump();
    const std::string b = numeric_fields(run_suite(name, o).to_json()).dump();
    if (a != b) ++mismatches;
  }
  const RunConfig c = smooth_config(16, 0.01, 0.1);
  const RunResult r1 = run(c), r2 = run(c);
  bool solver_same = r1.records.size() == r2.records.size() && r1.monitors_json() == r2.monitors_json();
  for (std::size_t i = 0; solver_same && i < r1.records.size(); ++i) {
    solver_same = r1.records[i].theta == r2.records[i].theta && r1.records[i].energy == r2.records[i].energy &&
                  r1.records[i].psi.total() == r2.records[i].psi.total();
  }
  return {mismatches == 0 && solver_same,
          std::to_string(runs.size()) + " suites re-run, " + std::to_string(mismatches) + " mismatches; solver run " +
              (solver_same ? "identical" : "differs")};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  SuiteOptions bony;
  bony.grid = 32;
  bony.trials = 20;
  const std::vector<Criterion> criteria = {
      {1, "cutoff partition of unity and supports", 1.0, cutoffs},
      {2, "paraproduct reconstruction", 30.0, [&] { return suite_outcome("bony_reconstruction", bony); }},
      {3, "Bernstein constants stable across bands and grids", 120.0, [] { return suite_outcome("bernstein"); }},
      {4, "product laws stable", 300.0, [] { return suite_outcome("product_laws"); }},
      {5, "composition ratio bounded", 60.0, [] { return suite_outcome("composition"); }},
      {6, "heat smoothing stable across eps", 180.0, [] { return suite_outcome("heat_smoothing"); }},
      {7, "damping integral bound", 10.0, [] { return suite_outcome("damping"); }},
      {8, "pressure solver", 120.0, [] { return suite_outcome("pressure_residual"); }},
      {9, "solver correctness", 600.0, solver_correctness},
      {10, "theta scaling in eps", 1800.0, theta_scaling},
      {11, "determinism", 600.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %s: %s [%.2f s of %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.limit_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
