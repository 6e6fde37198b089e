#include "alp/verify/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>

#include "alp/error.hpp"
#include "alp/stats.hpp"

namespace alp {

using nlohmann::json;

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

SweepMember summarize_run(double eps, const RunResult& res) {
  SweepMember m;
  m.eps = eps;
  m.verdict = res.verdict;
  m.t_halt = res.t_halt;
  m.halt_reason = res.halt_reason;
  m.max_theta = res.max_theta();
  m.min_band = res.records.empty() ? 0.0 : res.records.front().band;
  for (const DiagnosticsRecord& r : res.records) {
    m.min_band = std::min(m.min_band, r.band);
    m.max_psi = std::max(m.max_psi, r.psi.total());
  }
  m.bootstrap_implied_constant = res.bootstrap.implied_constant;
  m.first_violation = res.bootstrap.first_violation;
  m.transport_implied_constant = res.transport.max_implied_constant;
  m.pressure_y_constant = res.pressure.y_constant();
  m.pressure_z_constant = res.pressure.z_constant();
  m.epsilon_zero = res.epsilon_zero;
  return m;
}

bool stable(const std::vector<double>& values, double factor) {
  if (values.empty()) return false;
  for (double v : values)
    if (!std::isfinite(v)) return false;
  const RatioStats s = summarize(values);
  return s.max == 0.0 || s.max < factor * s.median;
}

}  // namespace

std::string sweep_member_dir(double eps) { return "eps_" + json(eps).dump(); }

SweepReport eps_sweep(const RunConfig& base, const std::vector<double>& eps_list, int jobs, const std::string& out_dir,
                      double stability_factor) {
  if (eps_list.empty()) throw PreconditionError("eps_sweep: empty eps list");
  if (jobs < 1) throw PreconditionError("eps_sweep: jobs must be at least 1");
  std::vector<RunConfig> configs;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw PreconditionError("eps_sweep: eps values must be positive");
    RunConfig cfg = base;
    cfg.eps.eps = eps;
    cfg.output_dir = out_dir.empty() ? "" : (std::filesystem::path(out_dir) / sweep_member_dir(eps)).string();
    cfg.validate();
    configs.push_back(cfg);
  }

  const auto start = std::chrono::steady_clock::now();
  SweepReport rep;
  rep.gamma = base.eps.gamma;
  rep.members.resize(configs.size());
  for (std::size_t first = 0; first < configs.size(); first += static_cast<std::size_t>(jobs)) {
    const std::size_t last = std::min(configs.size(), first + static_cast<std::size_t>(jobs));
    if (last - first == 1) {
      rep.members[first] = summarize_run(eps_list[first], run(configs[first]));
      continue;
    }
    std::vector<std::future<SweepMember>> pending;
    for (std::size_t i = first; i < last; ++i) {
      pending.push_back(std::async(std::launch::async, [&, i] { return summarize_run(eps_list[i], run(configs[i])); }));
    }
    for (std::size_t i = first; i < last; ++i) rep.members[i] = pending[i - first].get();
  }

  std::vector<double> lx, ly, ys, zs;
  rep.all_completed = true;
  for (const SweepMember& m : rep.members) {
    rep.all_completed = rep.all_completed && m.verdict == Verdict::completed;
    rep.bootstrap_rescale = std::max(rep.bootstrap_rescale, m.bootstrap_implied_constant);
    ys.push_back(m.pressure_y_constant);
    zs.push_back(m.pressure_z_constant);
    if (m.max_theta > 0.0) {
      lx.push_back(std::log(m.eps));
      ly.push_back(std::log(m.max_theta));
    }
  }
  std::vector<double> distinct = lx;
  std::sort(distinct.begin(), distinct.end());
  rep.degenerate = std::unique(distinct.begin(), distinct.end()) - distinct.begin() < 2;
  if (!rep.degenerate) {
    const LinearFit fit = fit_line(lx, ly);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.slope_within_band = std::abs(rep.slope - rep.gamma) <= rep.slope_halfwidth;
  }

  // order members by decreasing eps; once a larger eps halts, smaller ones may too
  std::vector<const SweepMember*> by_eps;
  for (const SweepMember& m : rep.members) by_eps.push_back(&m);
  std::sort(by_eps.begin(), by_eps.end(), [](const SweepMember* a, const SweepMember* b) { return a->eps > b->eps; });
  rep.monotone_verdicts = true;
  bool larger_completed = false;
  for (const SweepMember* m : by_eps) {
    const bool done = m->verdict == Verdict::completed;
    if (larger_completed && !done) rep.monotone_verdicts = false;
    larger_completed = larger_completed || done;
  }

  rep.pressure_y_stable = stable(ys, stability_factor);
  rep.pressure_z_stable = stable(zs, stability_factor);
  rep.pass = rep.all_completed && (rep.degenerate || rep.slope_within_band);
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

json SweepReport::to_json() const {
  json ms = json::array();
  for (const SweepMember& m : members) {
    json v = nullptr;
    if (m.first_violation) {
      v = {{"t", m.first_violation->t},
           {"quantity", m.first_violation->quantity},
           {"value", m.first_violation->value},
           {"threshold", m.first_violation->threshold}};
    }
    ms.push_back({{"eps", m.eps},
                  {"verdict", to_string(m.verdict)},
                  {"t_halt", m.t_halt},
                  {"halt_reason", m.halt_reason},
                  {"max_theta", m.max_theta},
                  {"min_band", m.min_band},
                  {"max_psi", m.max_psi},
                  {"bootstrap_implied_constant", finite_or_null(m.bootstrap_implied_constant)},
                  {"first_bootstrap_violation", v},
                  {"transport_implied_constant", finite_or_null(m.transport_implied_constant)},
                  {"pressure_Y_implied_constant", finite_or_null(m.pressure_y_constant)},
                  {"pressure_Z_implied_constant", finite_or_null(m.pressure_z_constant)},
                  {"epsilon_zero", m.epsilon_zero}});
  }
  return {{"kind", "eps_sweep"},
          {"members", ms},
          {"gamma", gamma},
          {"slope", degenerate ? json(nullptr) : json(slope)},
          {"intercept", degenerate ? json(nullptr) : json(intercept)},
          {"degenerate", degenerate},
          {"slope_halfwidth", slope_halfwidth},
          {"slope_within_band", slope_within_band},
          {"all_completed", all_completed},
          {"monotone_verdicts", monotone_verdicts},
          {"bootstrap_rescale", finite_or_null(bootstrap_rescale)},
          {"pressure_Y_stable", pressure_y_stable},
          {"pressure_Z_stable", pressure_z_stable},
          {"pass", pass},
          {"timing", {{"wall_time_s", wall_time_s}}}};
}

}  // namespace alp
