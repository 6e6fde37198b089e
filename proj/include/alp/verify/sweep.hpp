#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alp/solver/solver.hpp"
#include "json.hpp"

namespace alp {

struct SweepMember {
  double eps = 0.0;
  Verdict verdict = Verdict::completed;
  double t_halt = 0.0;
  std::string halt_reason;
  double max_theta = 0.0;
  double min_band = 0.0;
  double max_psi = 0.0;
  double bootstrap_implied_constant = 0.0;
  std::optional<BootstrapViolation> first_violation;
  double transport_implied_constant = 0.0;
  double pressure_y_constant = 0.0;
  double pressure_z_constant = 0.0;
  double epsilon_zero = 0.0;
};

struct SweepReport {
  std::vector<SweepMember> members;  // in the order of the eps list
  double gamma = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  bool degenerate = false;         // fewer than two runs with max_theta > 0
  double slope_halfwidth = 0.3;
  bool slope_within_band = false;  // |slope - gamma| <= halfwidth (false when degenerate)
  bool all_completed = false;
  bool monotone_verdicts = false;  // soft check: smaller eps never halts when a larger one completes
  double bootstrap_rescale = 0.0;  // largest implied bootstrap constant over the sweep
  bool pressure_y_stable = false;  // max < factor * median over the sweep
  bool pressure_z_stable = false;
  bool pass = false;               // all completed and (degenerate or slope within band)
  double wall_time_s = 0.0;

  nlohmann::json to_json() const;
};

/// Runs `base` once per eps (all other settings shared) with at most `jobs`
/// members in flight. Members write into <out_dir>/eps_<value>/ when out_dir is
/// non-empty. Throws PreconditionError for an empty list, a non-positive eps or
/// jobs < 1.
SweepReport eps_sweep(const RunConfig& base, const std::vector<double>& eps_list, int jobs = 1,
                      const std::string& out_dir = "", double stability_factor = 2.0);

/// Directory name of the member run for eps.
std::string sweep_member_dir(double eps);

}  // namespace alp
