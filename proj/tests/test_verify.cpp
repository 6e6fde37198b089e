#include <cmath>
#include <filesystem>
#include <fstream>

#include "alp/error.hpp"
#include "alp/verify/report.hpp"
#include "alp/verify/suites.hpp"
#include "alp/verify/sweep.hpp"
#include "doctest.h"

using namespace alp;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("alp_verify_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

RunConfig sweep_base() {
  RunConfig c;
  c.grid = Grid::cube(16);
  c.dt = 0.01;
  c.t_end = 0.05;
  c.delta = 0.5;
  c.lambda = 1.0;
  c.a0.kind = "mode";
  c.a0.amplitude = 0.2;
  c.v0.kind = "roll";
  c.v0.amplitude = 0.2;
  return c;
}

}  // namespace

TEST_CASE("case criteria") {
  CaseResult c;
  c.ratios = {1.0, 1.2, 1.9};
  apply_stability(c, 2.0);
  CHECK(c.max_ratio == 1.9);
  CHECK(c.median_ratio == 1.2);
  CHECK(c.pass);
  c.ratios = {1.0, 1.0, 2.5};
  apply_stability(c, 2.0);
  CHECK_FALSE(c.pass);
  c.ratios = {0.0, 0.0};
  apply_stability(c, 2.0);
  CHECK(c.pass);
  c.ratios = {1.0, 1.1};
  c.preconditions_held = false;
  apply_stability(c, 2.0);
  CHECK_FALSE(c.pass);

  CaseResult t;
  t.ratios = {1e-13, 5e-13};
  apply_tolerance(t, 1e-12);
  CHECK(t.pass);
  t.ratios.push_back(2e-12);
  apply_tolerance(t, 1e-12);
  CHECK_FALSE(t.pass);
}

TEST_CASE("suite report aggregation") {
  SuiteReport r;
  CHECK_FALSE((r.finalize(), r.pass));
  CaseResult a, b;
  a.ratios = {1.0, 1.0, 1.5};
  b.ratios = {1.0, 1.0, 1.8};
  apply_stability(a, 2.0);
  apply_stability(b, 2.0);
  r.cases = {a, b};
  r.finalize();
  CHECK(r.pass);
  CHECK(r.max_ratio == 1.8);  // binding case
  r.cases[1].preconditions_held = false;
  r.finalize();
  CHECK_FALSE(r.preconditions_held);
  CHECK_FALSE(r.pass);
}

TEST_CASE("report files and index") {
  const auto dir = scratch("index");
  const json rep = {{"x", 1}, {"timing", {{"wall_time_s", 0.5}}}};
  write_report(dir, "alpha", "suite", rep, true);
  write_report(dir, "beta", "suite", rep, false);
  write_report(dir, "alpha", "suite", rep, false);
  std::ifstream in(dir / "index.json");
  const json index = json::parse(in);
  REQUIRE(index["reports"].size() == 2);
  CHECK(index["reports"][0]["name"] == "alpha");
  CHECK(index["reports"][0]["pass"] == false);
  CHECK(std::filesystem::exists(dir / "beta.json"));
  CHECK(numeric_fields(rep) == json{{"x", 1}});
  std::filesystem::remove_all(dir);
}

TEST_CASE("run_suite validation") {
  CHECK_THROWS_AS(run_suite("nope"), PreconditionError);
  SuiteOptions o;
  o.params = {{"unknown_key", 1}};
  CHECK_THROWS_AS(run_suite("damping", o), PreconditionError);
  o.params = {{"cases", json::array({{{"law", "one_term"}, {"sigma", {1.5, 0.5}}, {"s", {0.25, 0.25}}, {"p", {"inf", "inf", "inf"}}}})}};
  CHECK_THROWS_AS(run_suite("product_laws", o), PreconditionError);
  o.params = json::object();
  o.stability_factor = 1.0;
  CHECK_THROWS_AS(run_suite("damping", o), PreconditionError);
  CHECK(suite_names().size() == 8);
}

TEST_CASE("identity and bound suites pass at small sizes") {
  SuiteOptions o;
  o.grid = 16;
  o.trials = 3;
  for (const char* name : {"bony_reconstruction", "damping", "interpolation", "composition"}) {
    const SuiteReport r = run_suite(name, o);
    CHECK_MESSAGE(r.pass, name);
    CHECK(r.trials == 3);
    CHECK(r.grid.n1 == 16);
  }
}

TEST_CASE("bernstein constants agree across 16 and 32 grids") {
  SuiteOptions o;
  o.trials = 20;
  o.params = {{"grids", {16, 32}}, {"bands", {1, 2}}};
  const SuiteReport r = run_suite("bernstein", o);
  CHECK(r.pass);
  for (const CaseResult& c : r.cases) {
    REQUIRE(c.ratios.size() == 4);
    // same band on the two grids
    CHECK(std::abs(c.ratios[0] / c.ratios[2] - 1.0) < 0.25);
    CHECK(std::abs(c.ratios[1] / c.ratios[3] - 1.0) < 0.25);
  }
  // vertical band 1 is the single wavenumber pair +-2, so the constant is exactly 1
  CHECK(r.cases[2].ratios[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("suites are deterministic") {
  SuiteOptions o;
  o.grid = 16;
  o.trials = 4;
  o.seed = 7;
  for (const char* name : {"damping", "composition"}) {
    const json a = numeric_fields(run_suite(name, o).to_json());
    const json b = numeric_fields(run_suite(name, o).to_json());
    CHECK(a.dump() == b.dump());
  }
  o.seed = 8;
  CHECK(numeric_fields(run_suite("damping", o).to_json()) != numeric_fields(run_suite("damping", SuiteOptions{16, 4, 7}).to_json()));
}

TEST_CASE("eps_sweep: zero data is degenerate") {
  RunConfig c = sweep_base();
  c.a0.kind = "zero";
  c.v0.kind = "zero";
  const SweepReport r = eps_sweep(c, {0.2, 0.1});
  CHECK(r.degenerate);
  CHECK(r.all_completed);
  CHECK(r.pass);
  for (const auto& m : r.members) CHECK(m.max_theta == 0.0);
  CHECK(r.to_json()["slope"].is_null());
  CHECK_THROWS_AS(eps_sweep(c, {}), PreconditionError);
  CHECK_THROWS_AS(eps_sweep(c, {0.1}, 0), PreconditionError);
  CHECK_THROWS_AS(eps_sweep(c, {-0.1}), PreconditionError);
}

TEST_CASE("eps_sweep: slope fit and member outputs") {
  const RunConfig c = sweep_base();
  const auto dir = scratch("sweep");
  const std::vector<double> eps = {0.2, 0.1, 0.05};
  const SweepReport r = eps_sweep(c, eps, 1, dir.string());
  REQUIRE(r.members.size() == 3);
  CHECK(r.all_completed);
  CHECK_FALSE(r.degenerate);
  // least squares on (log eps, log max theta), computed directly
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& m : r.members) {
    CHECK(m.max_theta > 0.0);
    const double x = std::log(m.eps), y = std::log(m.max_theta);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = 3.0;
  CHECK(r.slope == doctest::Approx((n * sxy - sx * sy) / (n * sxx - sx * sx)).epsilon(1e-10));
  for (double e : eps) {
    CHECK(std::filesystem::exists(dir / sweep_member_dir(e) / "diagnostics.csv"));
    CHECK(std::filesystem::exists(dir / sweep_member_dir(e) / "verdict.json"));
  }
  const SweepReport again = eps_sweep(c, eps, 2);
  CHECK(numeric_fields(again.to_json()).dump() == numeric_fields(r.to_json()).dump());
  std::filesystem::remove_all(dir);
}

TEST_CASE("eps_sweep: pressure implied constants do not grow as eps decreases") {
  const SweepReport r = eps_sweep(sweep_base(), {0.2, 0.1, 0.05});
  REQUIRE(r.all_completed);
  for (std::size_t i = 1; i < r.members.size(); ++i) {
    CHECK(r.members[i].pressure_y_constant <= r.members[i - 1].pressure_y_constant);
    CHECK(r.members[i].pressure_z_constant <= r.members[i - 1].pressure_z_constant);
  }
  CHECK(r.members.front().pressure_y_constant > 0.0);
}
