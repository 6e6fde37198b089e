#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "alp/pressure/pressure.hpp"
#include "alp/semigroup/eps_params.hpp"
#include "json.hpp"

namespace alp {

/// Named initial profile. Scalar kinds: zero, mode, random. Vector kinds:
/// zero, mode, taylor_green, roll, random.
///   mode:         amplitude * cos(xi . x), for vectors along axis `component`
///                 and Leray-projected
///   taylor_green: amplitude * (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0)
///   roll:         amplitude * (-sin x1 cos x3, 0, cos x1 sin x3)
///   random:       Gaussian draw with envelope e^{-envelope |xi|}, L2 norm = amplitude
/// Wavenumbers are integers on the grid lattice.
struct ProfileSpec {
  std::string kind = "zero";
  double amplitude = 1.0;
  std::array<int, 3> mode{1, 0, 1};
  int component = 0;
  double envelope = 0.3;
  std::uint64_t seed = 0;  // 0: derived from the run seed
};

struct RunFlags {
  bool nonlinear = true;         // advection in both equations
  bool density_coupling = true;  // G(eps^beta a) terms
  bool pressure = true;
};

/// Resolved configuration of one solver run. The physics keys (grid, eps,
/// alpha, beta, gamma, delta, lambda, dt, t_end) must appear explicitly in
/// JSON input; every other key has the default shown here.
struct RunConfig {
  Grid grid = Grid::cube(32);
  EpsParams eps;
  double delta = 0.5;
  double lambda = 4.0;
  double dt = 0.01;
  double t_end = 1.0;
  PressureConfig pressure;
  std::uint64_t seed = 1;
  ProfileSpec a0;
  ProfileSpec v0;
  double bootstrap_C = 1.0;
  double eps_small = 0.1;          // smallness level for ||a_Phi|| in the composition estimate
  double snapshot_interval = 0.0;  // 0: no snapshots
  bool allow_out_of_range = false;
  RunFlags flags;
  std::string output_dir;

  /// Throws PreconditionError on invalid settings; the parameter range check of
  /// validate_parameter_range is skipped when allow_out_of_range is set.
  void validate() const;
  int steps() const;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Strict parse: unknown keys and missing physics keys throw PreconditionError.
RunConfig run_config_from_json(const nlohmann::json& j);
/// Reads and parses a config file; IoError when unreadable, PreconditionError when malformed.
nlohmann::json load_json_file(const std::string& path);

/// Applies "dotted.key=value" to j. The value is parsed as JSON when possible,
/// otherwise stored as a string. Throws PreconditionError when malformed.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Initial profile on `grid`; components is 1 (a0) or 3 (v0). `stream`
/// separates the RNG streams of the two profiles.
SpectralField3 make_profile(const ProfileSpec& spec, const Grid& grid, int components, std::uint64_t run_seed,
                            std::uint64_t stream);

}  // namespace alp
