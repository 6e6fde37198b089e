#include "alp/verify/report.hpp"

#include <algorithm>
#include <fstream>

#include "alp/error.hpp"
#include "alp/stats.hpp"

namespace alp {

using nlohmann::json;

json CaseResult::to_json() const {
  return {{"label", label},
          {"parameters", parameters},
          {"ratios", ratios},
          {"max_ratio", max_ratio},
          {"median_ratio", median_ratio},
          {"criterion", criterion},
          {"preconditions_held", preconditions_held},
          {"pass", pass}};
}

void apply_stability(CaseResult& c, double factor) {
  c.criterion = "stability";
  if (c.ratios.empty()) {
    c.pass = false;
    return;
  }
  const RatioStats s = summarize(c.ratios);
  c.max_ratio = s.max;
  c.median_ratio = s.median;
  const bool stable = s.max == 0.0 || s.max < factor * s.median;
  c.pass = c.preconditions_held && stable;
}

void apply_tolerance(CaseResult& c, double tolerance) {
  c.criterion = "tolerance";
  c.parameters["tolerance"] = tolerance;
  if (c.ratios.empty()) {
    c.pass = false;
    return;
  }
  const RatioStats s = summarize(c.ratios);
  c.max_ratio = s.max;
  c.median_ratio = s.median;
  c.pass = c.preconditions_held && s.max <= tolerance;
}

void SuiteReport::finalize() {
  preconditions_held = true;
  pass = !cases.empty();
  double worst = -1.0;
  for (const CaseResult& c : cases) {
    preconditions_held = preconditions_held && c.preconditions_held;
    pass = pass && c.pass;
    const double q = c.median_ratio > 0.0 ? c.max_ratio / c.median_ratio : (c.max_ratio > 0.0 ? 1e300 : 0.0);
    if (q > worst) {
      worst = q;
      max_ratio = c.max_ratio;
      median_ratio = c.median_ratio;
    }
  }
  pass = pass && preconditions_held;
}

json SuiteReport::to_json() const {
  json cs = json::array();
  for (const CaseResult& c : cases) cs.push_back(c.to_json());
  return {{"suite", suite},
          {"trials", trials},
          {"grid", {grid.n1, grid.n2, grid.n3}},
          {"seed", seed},
          {"stability_factor", stability_factor},
          {"cases", cs},
          {"max_ratio", max_ratio},
          {"median_ratio", median_ratio},
          {"preconditions_held", preconditions_held},
          {"pass", pass},
          {"timing", {{"wall_time_s", wall_time_s}}}};
}

std::filesystem::path write_report(const std::filesystem::path& dir, const std::string& name, const std::string& kind,
                                   const json& report, bool pass) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path file = dir / (name + ".json");
  {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << report.dump(2) << '\n';
  }
  const std::filesystem::path index_path = dir / "index.json";
  json index = {{"reports", json::array()}};
  if (std::filesystem::exists(index_path)) {
    std::ifstream in(index_path);
    try {
      index = json::parse(in);
    } catch (const json::exception&) {
      index = {{"reports", json::array()}};
    }
    if (!index.contains("reports") || !index["reports"].is_array()) index = {{"reports", json::array()}};
  }
  json entries = json::array();
  for (const auto& e : index["reports"]) {
    if (e.value("name", "") != name) entries.push_back(e);
  }
  entries.push_back({{"name", name}, {"kind", kind}, {"file", file.filename().string()}, {"pass", pass}});
  std::sort(entries.begin(), entries.end(),
            [](const json& a, const json& b) { return a.value("name", "") < b.value("name", ""); });
  index["reports"] = entries;
  std::ofstream out(index_path);
  if (!out) throw IoError("cannot write " + index_path.string());
  out << index.dump(2) << '\n';
  return file;
}

json numeric_fields(const json& report) {
  json copy = report;
  if (copy.is_object()) copy.erase("timing");
  return copy;
}

}  // namespace alp
