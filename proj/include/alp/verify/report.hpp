#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "alp/spectral/grid.hpp"
#include "json.hpp"

namespace alp {

/// One checked configuration inside a suite.
///   criterion "stability": pass iff max_ratio < factor * median_ratio;
///   criterion "tolerance": pass iff max_ratio <= tolerance (identities, exact bounds);
///   criterion "spread":    pass iff every group of ratios stays within the
///                          relative spread recorded in `parameters`.
struct CaseResult {
  std::string label;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  std::string criterion = "stability";
  bool preconditions_held = true;
  bool pass = false;

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::string suite;
  int trials = 0;
  Grid grid;
  std::uint64_t seed = 0;
  double stability_factor = 2.0;
  std::vector<CaseResult> cases;
  double max_ratio = 0.0;     // of the binding case (largest max / median)
  double median_ratio = 0.0;
  bool preconditions_held = true;
  bool pass = false;
  double wall_time_s = 0.0;  // reported under "timing", outside the numeric results

  /// Fills the suite-level fields from the cases.
  void finalize();
  nlohmann::json to_json() const;
};

/// Fills max/median from `ratios` and sets pass by the stability criterion;
/// an all-zero sample counts as stable.
void apply_stability(CaseResult& c, double factor);
/// Sets max/median and pass = preconditions && max <= tolerance.
void apply_tolerance(CaseResult& c, double tolerance);

/// Writes `report` as <dir>/<name>.json and records it in <dir>/index.json
/// (entries keyed by name, kept sorted). Returns the report path.
std::filesystem::path write_report(const std::filesystem::path& dir, const std::string& name, const std::string& kind,
                                   const nlohmann::json& report, bool pass);

/// The numeric content of a report: everything except the "timing" object.
nlohmann::json numeric_fields(const nlohmann::json& report);

}  // namespace alp
