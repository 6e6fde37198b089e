#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alp/verify/report.hpp"
#include "json.hpp"

namespace alp {

struct SuiteOptions {
  int grid = 0;    // cube side; 0 selects the suite default
  int trials = 0;  // 0 selects the suite default
  std::uint64_t seed = 1;
  double stability_factor = 2.0;
  /// Suite-specific overrides, e.g. {"cases": [...]} for product_laws or
  /// {"eps": [...]} for heat_smoothing. Unknown keys throw PreconditionError.
  nlohmann::json params = nlohmann::json::object();
};

/// bernstein, product_laws, interpolation, composition, heat_smoothing,
/// damping, bony_reconstruction, pressure_residual.
const std::vector<std::string>& suite_names();

/// Runs one suite with seeding derived from opts.seed only, so identical
/// options reproduce every numeric field. Throws PreconditionError for an
/// unknown suite or invalid options.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace alp
