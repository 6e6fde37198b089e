#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alp/error.hpp"
#include "alp/norms/besov.hpp"
#include "alp/paraproduct/composition.hpp"
#include "alp/pressure/pressure.hpp"
#include "alp/solver/config.hpp"
#include "alp/solver/solver.hpp"
#include "alp/spectral/snapshot.hpp"
#include "alp/verify/report.hpp"
#include "alp/verify/suites.hpp"
#include "alp/verify/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kRuntimeHalt = 3 };

// --out wins, then ANISO_LP_REPORT_DIR, then the fallback.
std::string output_dir(const std::string& flag, const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ANISO_LP_REPORT_DIR"); env && *env) return env;
  return fallback;
}

alp::RunConfig resolve_config(const std::string& path, const std::vector<std::string>& overrides,
                              const std::string& seed) {
  json j = alp::load_json_file(path);
  if (!seed.empty()) alp::apply_override(j, "seed=" + seed);
  for (const std::string& o : overrides) alp::apply_override(j, o);
  return alp::run_config_from_json(j);
}

void write_json(const fs::path& file, const json& j) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw alp::IoError("cannot write " + file.string());
  out << j.dump(2) << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw alp::PreconditionError("not a number: '" + s + "'");
  }
}

struct VerifyArgs {
  std::vector<std::string> suites;
  int grid = 0;
  int trials = 0;
  std::uint64_t seed = 1;
  double factor = 2.0;
  std::string params;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> names = a.suites;
  if (names.size() == 1 && names[0] == "all") names = alp::suite_names();
  alp::SuiteOptions o;
  o.grid = a.grid;
  o.trials = a.trials;
  o.seed = a.seed;
  o.stability_factor = a.factor;
  if (!a.params.empty()) {
    try {
      o.params = json::parse(a.params);
    } catch (const json::exception& e) {
      throw alp::PreconditionError(std::string("--params: ") + e.what());
    }
  }
  const fs::path dir = output_dir(a.out, "reports");
  bool all_pass = true;
  for (const std::string& name : names) {
    const alp::SuiteReport r = alp::run_suite(name, o);
    const fs::path file = alp::write_report(dir, name, "suite", r.to_json(), r.pass);
    std::cerr << name << ": " << (r.pass ? "pass" : "FAIL") << " (max " << r.max_ratio << ", median " << r.median_ratio
              << ", " << r.wall_time_s << " s) -> " << file.string() << '\n';
    for (const alp::CaseResult& c : r.cases) {
      if (!c.pass) std::cerr << "  failed case " << c.label << " (" << c.criterion << ")\n";
    }
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kOk : kCheckFailed;
}

int cmd_run(const std::string& config, const std::vector<std::string>& sets, const std::string& seed,
            const std::string& out, bool strict) {
  alp::RunConfig cfg = resolve_config(config, sets, seed);
  cfg.output_dir = output_dir(out, cfg.output_dir.empty() ? "run_output" : cfg.output_dir);
  const alp::RunResult r = alp::run(cfg);
  std::cerr << "run: " << alp::to_string(r.verdict) << " at t = " << r.t_halt << ", max theta " << r.max_theta()
            << " -> " << cfg.output_dir << '\n';
  if (r.verdict != alp::Verdict::completed) {
    std::cerr << "  halted: " << r.halt_reason << '\n';
    return strict ? kRuntimeHalt : kOk;
  }
  return kOk;
}

int cmd_sweep(const std::string& config, const std::vector<std::string>& sets, const std::string& seed,
              const std::string& eps_csv, int jobs, const std::string& out, bool strict) {
  const alp::RunConfig base = resolve_config(config, sets, seed);
  std::vector<double> eps;
  for (const std::string& s : split(eps_csv, ',')) eps.push_back(parse_number(s));
  const fs::path dir = output_dir(out, "sweep_output");
  const alp::SweepReport r = alp::eps_sweep(base, eps, jobs, dir.string());
  const fs::path file = alp::write_report(dir, "eps_sweep", "sweep", r.to_json(), r.pass);
  std::cerr << "sweep: slope " << (r.degenerate ? std::string("degenerate") : std::to_string(r.slope))
            << ", all completed " << (r.all_completed ? "yes" : "no") << ", bootstrap rescale "
            << r.bootstrap_rescale << " -> " << file.string() << '\n';
  if (!r.monotone_verdicts) std::cerr << "  note: a smaller eps halted where a larger one completed\n";
  if (strict && !r.all_completed) return kRuntimeHalt;
  return r.pass ? kOk : kCheckFailed;
}

int cmd_norms(const std::string& snapshot, const std::vector<std::string>& indices, double phase,
              const std::string& out) {
  const alp::Snapshot s = alp::read_snapshot(fs::path(snapshot));
  const alp::BlockNorms blocks = alp::block_norms(s.field, phase);
  json besov = json::array();
  for (const std::string& idx : indices) {
    const auto parts = split(idx, ',');
    if (parts.size() != 2) throw alp::PreconditionError("--index expects sigma,s; got '" + idx + "'");
    const alp::AnisoBesovIndex i{parse_number(parts[0]), parse_number(parts[1])};
    besov.push_back({{"sigma", i.sigma}, {"s", i.s}, {"value", blocks.besov(i)}});
  }
  const fs::path dir = output_dir(out, "norms_output");
  const alp::Grid& g = s.field.grid();
  write_json(dir / "norms.json", {{"snapshot", snapshot},
                                  {"time", s.time},
                                  {"grid", {g.n1, g.n2, g.n3}},
                                  {"components", s.field.components()},
                                  {"phase_band", phase},
                                  {"l2", s.field.l2_norm()},
                                  {"besov", besov}});
  std::ofstream csv(dir / "block_norms.csv");
  if (!csv) throw alp::IoError("cannot write " + (dir / "block_norms.csv").string());
  csv << "component,k,l,norm\n";
  csv.precision(17);
  for (int c = 0; c < blocks.components(); ++c)
    for (int k = blocks.h_range().first; k <= blocks.h_range().last; ++k)
      for (int l = blocks.v_range().first; l <= blocks.v_range().last; ++l)
        csv << c << ',' << k << ',' << l << ',' << blocks.at(c, k, l) << '\n';
  std::cerr << "norms: " << besov.size() << " Besov norms -> " << dir.string() << '\n';
  return kOk;
}

int cmd_pressure_check(const std::string& config, const std::vector<std::string>& sets, const std::string& seed,
                       const std::string& out) {
  const alp::RunConfig cfg = resolve_config(config, sets, seed);
  const alp::SpectralField3 a0 = alp::make_profile(cfg.a0, cfg.grid, 1, cfg.seed, 0);
  const alp::SpectralField3 v0 = alp::make_profile(cfg.v0, cfg.grid, 3, cfg.seed, 1);
  const fs::path dir = output_dir(out, "pressure_output");
  json report = {{"grid", {cfg.grid.n1, cfg.grid.n2, cfg.grid.n3}},
                 {"eps", cfg.eps.eps},
                 {"tol", cfg.pressure.tol},
                 {"max_iters", cfg.pressure.max_iters}};
  int code = kOk;
  try {
    const alp::PressureSolution s = alp::pressure_solve(a0, v0, cfg.eps, cfg.pressure);
    const alp::SpectralField3 G = alp::compose_G(cfg.eps.density() * a0);
    report["converged"] = true;
    report["iters"] = s.iters;
    report["residual"] = s.residual;
    report["residual_history"] = s.residual_history;
    report["assembled_residual"] = alp::pressure_residual(G, v0, s.q, cfg.eps);
    report["q_l2"] = s.q.l2_norm();
    std::cerr << "pressure-check: converged in " << s.iters << " iterations, residual " << s.residual << '\n';
  } catch (const alp::ConvergenceError& e) {
    report["converged"] = false;
    report["error"] = e.what();
    std::cerr << "pressure-check: " << e.what() << '\n';
    code = kCheckFailed;
  }
  write_json(dir / "pressure_check.json", report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic Littlewood-Paley toolkit: inequality suites, solver runs and eps sweeps"};
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict", strict, "Exit 3 when a run halts before t_end");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run inequality suites and write JSON reports");
  verify->add_option("--suite", va.suites, "Suite name(s), or 'all'")->required();
  verify->add_option("--grid", va.grid, "Cube side (0: suite default)");
  verify->add_option("--trials", va.trials, "Trials (0: suite default)");
  verify->add_option("--seed", va.seed, "Seed");
  verify->add_option("--stability-factor", va.factor, "max < factor * median");
  verify->add_option("--params", va.params, "Suite parameters as a JSON object");
  verify->add_option("--out", va.out, "Report directory");

  std::string config, seed, out, eps_csv, snapshot;
  std::vector<std::string> sets, indices;
  int jobs = 1;
  double phase = 0.0;

  auto* run = app.add_subcommand("run", "Integrate one configuration");
  run->add_option("--config", config, "JSON config")->required();
  run->add_option("--set", sets, "Override key=value (dotted keys)");
  run->add_option("--seed", seed, "Seed override");
  run->add_option("--out", out, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Run the config across eps values and fit max theta vs eps");
  sweep->add_option("--eps", eps_csv, "Comma-separated eps values")->required();
  sweep->add_option("--config", config, "JSON config")->required();
  sweep->add_option("--set", sets, "Override key=value (dotted keys)");
  sweep->add_option("--seed", seed, "Seed override");
  sweep->add_option("--jobs", jobs, "Concurrent members")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out, "Output directory");

  auto* norms = app.add_subcommand("norms", "Block and Besov norms of a field snapshot");
  norms->add_option("--snapshot", snapshot, "Snapshot file")->required();
  norms->add_option("--index", indices, "sigma,s (repeatable)");
  norms->add_option("--phase", phase, "Phase band r in e^{r|D|}");
  norms->add_option("--out", out, "Output directory");

  auto* pcheck = app.add_subcommand("pressure-check", "Solve the pressure equation for the configured initial data");
  pcheck->add_option("--config", config, "JSON config")->required();
  pcheck->add_option("--set", sets, "Override key=value (dotted keys)");
  pcheck->add_option("--seed", seed, "Seed override");
  pcheck->add_option("--out", out, "Output directory");

  for (auto* sub : {verify, run, sweep, norms, pcheck}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*run) return cmd_run(config, sets, seed, out, strict);
    if (*sweep) return cmd_sweep(config, sets, seed, eps_csv, jobs, out, strict);
    if (*norms) return cmd_norms(snapshot, indices, phase, out);
    if (*pcheck) return cmd_pressure_check(config, sets, seed, out);
  } catch (const alp::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const alp::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const alp::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kRuntimeHalt;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
