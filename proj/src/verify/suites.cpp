#include "alp/verify/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "alp/error.hpp"
#include "alp/norms/data_norms.hpp"
#include "alp/paraproduct/bony.hpp"
#include "alp/paraproduct/composition.hpp"
#include "alp/paraproduct/product_law.hpp"
#include "alp/pressure/pressure.hpp"
#include "alp/semigroup/damping.hpp"
#include "alp/semigroup/smoothing.hpp"
#include "alp/spectral/fft.hpp"
#include "alp/spectral/operators.hpp"
#include "alp/spectral/random_field.hpp"
#include "alp/stats.hpp"

namespace alp {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reads suite parameters, rejecting keys the suite does not know.
class Params {
 public:
  Params(const json& j, std::string suite, std::set<std::string> known) : j_(j) {
    if (!j_.is_object()) throw PreconditionError(suite + ": params must be a JSON object");
    for (const auto& [key, value] : j_.items()) {
      if (!known.count(key)) throw PreconditionError(suite + ": unknown parameter '" + key + "'");
    }
  }

  template <class T>
  T get(const std::string& key, T fallback) const {
    if (!j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw PreconditionError("parameter '" + key + "': " + e.what());
    }
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const { return j_.at(key); }

 private:
  const json& j_;
};

double rel_diff(const SpectralField3& x, const SpectralField3& ref) {
  const double n = ref.l2_norm();
  const double d = (x - ref).l2_norm();
  if (n == 0.0) return d == 0.0 ? 0.0 : kInf;
  return d / n;
}

// pass = preconditions && max <= bound && max < factor * median (an all-zero sample is stable)
void apply_bound(CaseResult& c, double bound, double factor) {
  apply_stability(c, factor);
  c.parameters["bound"] = bound;
  c.criterion = "stability_and_bound";
  c.pass = c.pass && c.max_ratio <= bound;
}

// pass = preconditions && max <= spread * min, every ratio finite and positive
void apply_spread(CaseResult& c, double spread) {
  c.criterion = "spread";
  c.parameters["spread"] = spread;
  if (c.ratios.empty()) {
    c.pass = false;
    return;
  }
  const RatioStats s = summarize(c.ratios);
  c.max_ratio = s.max;
  c.median_ratio = s.median;
  c.parameters["min_ratio"] = s.min;
  c.pass = c.preconditions_held && std::isfinite(s.max) && s.min > 0.0 && s.max <= spread * s.min;
}

std::uint64_t stream_id(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t id = 0;
  for (std::uint64_t p : parts) id = id * 1000003ULL + p;
  return id;
}

RandomFieldOptions envelope_options(double envelope) {
  RandomFieldOptions o;
  o.envelope = envelope;
  return o;
}

// ---------------------------------------------------------------- bernstein

struct SpectralMoments {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;  // sum |c|^2 and sum xi_j^2 |c|^2
};

SpectralMoments moments(const SpectralField3& f) {
  SpectralMoments m;
  const ModeTable& t = f.modes();
  const double scale = f.grid().wavenumber_scale();
  for (std::size_t i = 0; i < f.mode_count(); ++i) {
    const double w = std::norm(f.at(i));
    if (w == 0.0) continue;
    const auto& xi = t.xi[i];
    m.s0 += w;
    m.s1 += w * (scale * xi[0]) * (scale * xi[0]);
    m.s2 += w * (scale * xi[1]) * (scale * xi[1]);
    m.s3 += w * (scale * xi[2]) * (scale * xi[2]);
  }
  return m;
}

SuiteReport bernstein(const SuiteOptions& o, SuiteReport r) {
  const Params p(o.params, "bernstein", {"grids", "bands", "ring", "spread"});
  const int n = o.grid > 0 ? o.grid : 16;
  const int trials = o.trials > 0 ? o.trials : 100;
  const auto grids = p.get<std::vector<int>>("grids", {n, 2 * n, 4 * n});
  const auto bands = p.get<std::vector<int>>("bands", {1, 2, 3, 4});
  const auto ring = p.get<std::vector<double>>("ring", {0.75, 1.25});
  const double spread = p.get<double>("spread", 1.25);
  if (ring.size() != 2 || !(ring[0] > 0.0 && ring[0] < ring[1])) throw PreconditionError("bernstein: bad ring");
  if (grids.empty() || bands.empty()) throw PreconditionError("bernstein: empty grid or band list");
  r.grid = Grid::cube(n);
  r.trials = trials;

  const char* labels[4] = {"horizontal_forward", "horizontal_reverse", "vertical_forward", "vertical_reverse"};
  std::vector<CaseResult> cases(4);
  for (int c = 0; c < 4; ++c) {
    cases[static_cast<std::size_t>(c)].label = labels[c];
    cases[static_cast<std::size_t>(c)].parameters = {{"ring", ring}, {"derivative_order", 1}, {"fitted", json::array()}};
  }
  json skipped = json::array();
  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    const Grid g = Grid::cube(grids[gi]);
    g.validate();
    const int axis_max = grids[gi] / 3;  // largest retained wavenumber per axis
    for (int k : bands) {
      if (k < 1) throw PreconditionError("bernstein: bands start at 1");
      const double lo = ring[0] * std::ldexp(1.0, k);
      const double hi = ring[1] * std::ldexp(1.0, k);
      if (hi > axis_max) {
        skipped.push_back({{"grid", grids[gi]}, {"band", k}});
        continue;
      }
      for (int dir = 0; dir < 2; ++dir) {
        const bool horizontal = dir == 0;
        const SpectralMask mask = [=](const ModeTable& t, std::size_t i) {
          const double rad = horizontal ? t.radius_h[i] : t.radius_v[i];
          return rad >= lo && rad <= hi ? 1.0 : 0.0;
        };
        double forward = 0.0, reverse = 0.0;
        bool held = true;
        for (int t = 0; t < trials; ++t) {
          Rng rng = trial_rng(o.seed, stream_id({gi, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(dir),
                                                 static_cast<std::uint64_t>(t)}));
          const SpectralField3 f = random_field(g, 1, rng, envelope_options(0.0), mask);
          const SpectralMoments m = moments(f);
          if (!(m.s0 > 0.0)) {
            held = false;
            continue;
          }
          const double d2 = horizontal ? std::max(m.s1, m.s2) : m.s3;
          const double scale = std::ldexp(1.0, k);
          forward = std::max(forward, std::sqrt(d2 / m.s0) / scale);
          reverse = std::max(reverse, std::sqrt(m.s0 / d2) * scale);
        }
        for (int which = 0; which < 2; ++which) {
          CaseResult& c = cases[static_cast<std::size_t>(2 * dir + which)];
          const double value = which == 0 ? forward : reverse;
          c.ratios.push_back(value);
          c.preconditions_held = c.preconditions_held && held;
          c.parameters["fitted"].push_back({{"grid", grids[gi]}, {"band", k}, {"constant", value}});
        }
      }
    }
  }
  for (CaseResult& c : cases) {
    c.parameters["skipped"] = skipped;
    apply_spread(c, spread);
    r.cases.push_back(std::move(c));
  }
  return r;
}

// ------------------------------------------------------------- product laws

TimeExponent parse_exponent(const json& j) {
  const std::string s = j.is_string() ? j.get<std::string>() : j.dump();
  if (s == "1") return TimeExponent::one;
  if (s == "2") return TimeExponent::two;
  if (s == "inf") return TimeExponent::infinity;
  throw PreconditionError("time exponent must be 1, 2 or \"inf\", got " + s);
}

ProductLawCase parse_case(const json& j) {
  if (!j.is_object()) throw PreconditionError("product law case must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "law" && key != "sigma" && key != "s" && key != "p")
      throw PreconditionError("product law case: unknown key '" + key + "'");
  }
  ProductLawCase c;
  try {
    const std::string law = j.at("law").get<std::string>();
    if (law == "four_term") {
      c.law = ProductLaw::four_term;
    } else if (law == "two_term") {
      c.law = ProductLaw::two_term;
    } else if (law == "one_term") {
      c.law = ProductLaw::one_term;
    } else {
      throw PreconditionError("unknown product law '" + law + "'");
    }
    const auto sigma = j.at("sigma").get<std::vector<double>>();
    const auto s = j.at("s").get<std::vector<double>>();
    if (sigma.size() != s.size()) throw PreconditionError("product law case: sigma and s lengths differ");
    for (std::size_t i = 0; i < sigma.size(); ++i) c.indices.push_back({sigma[i], s[i]});
    if (j.contains("p")) {
      for (const auto& e : j.at("p")) c.exponents.push_back(parse_exponent(e));
    }
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("product law case: ") + e.what());
  }
  return c;
}

std::vector<ProductLawCase> default_product_cases() {
  using TE = TimeExponent;
  auto pairs = [](std::vector<double> sigma, std::vector<double> s) {
    std::vector<AnisoBesovIndex> out;
    for (std::size_t i = 0; i < sigma.size(); ++i) out.push_back({sigma[i], s[i]});
    return out;
  };
  return {
      {ProductLaw::four_term, pairs({1, .5, .5, 1, 1, .5, .5, 1}, {.5, .25, .25, .5, .25, .5, .5, .25}), {}},
      {ProductLaw::two_term, pairs({.5, .5, .25, .75}, {.5, .25, .25, .5}), {TE::one, TE::infinity, TE::one, TE::one, TE::infinity}},
      {ProductLaw::two_term, pairs({1, .5, .5, 1}, {.25, .5, .5, .25}), {TE::two, TE::infinity, TE::two, TE::two, TE::infinity}},
      {ProductLaw::one_term, pairs({.5, .5}, {.25, .25}), {TE::infinity, TE::infinity, TE::infinity}},
      {ProductLaw::one_term, pairs({1, .5}, {.5, .25}), {TE::one, TE::infinity, TE::one}},
  };
}

SuiteReport product_laws(const SuiteOptions& o, SuiteReport r) {
  const Params p(o.params, "product_laws", {"cases", "phases", "envelope", "time_samples"});
  std::vector<ProductLawCase> cases;
  if (p.has("cases")) {
    for (const auto& c : p.raw("cases")) cases.push_back(parse_case(c));
    if (cases.empty()) throw PreconditionError("product_laws: empty case list");
  } else {
    cases = default_product_cases();
  }
  for (const auto& c : cases) validate(c);
  const auto phases = p.get<std::vector<double>>("phases", {0.0, 0.05});
  ProductLawOptions lo;
  lo.grid = Grid::cube(o.grid > 0 ? o.grid : 32);
  lo.trials = o.trials > 0 ? o.trials : 100;
  lo.seed = o.seed;
  lo.envelope = p.get<double>("envelope", 0.3);
  lo.time_samples = p.get<int>("time_samples", 4);
  r.grid = lo.grid;
  r.trials = lo.trials;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (double phase : phases) {
      lo.phase_band = phase;
      const FitReport fit = product_law_fit(cases[i], lo);
      CaseResult c;
      c.label = std::string(to_string(cases[i].law)) + "#" + std::to_string(i) + " phase=" + json(phase).dump();
      c.parameters = {{"index_tuple", fit.index_tuple}, {"phase_band", phase}, {"envelope", lo.envelope}};
      c.ratios = fit.ratios;
      apply_stability(c, o.stability_factor);
      r.cases.push_back(std::move(c));
    }
  }
  return r;
}

// ------------------------------------------------------------ interpolation

SuiteReport interpolation(const SuiteOptions& o, SuiteReport r) {
  const Params p(o.params, "interpolation", {"gammas", "phase", "envelope"});
  const auto gammas = p.get<std::vector<double>>("gammas", {0.02, 0.25});
  const double phase = p.get<double>("phase", 0.05);
  const double envelope = p.get<double>("envelope", 0.3);
  r.grid = Grid::cube(o.grid > 0 ? o.grid : 32);
  r.trials = o.trials > 0 ? o.trials : 100;
  std::vector<CaseResult> cases(gammas.size());
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    const double g = gammas[gi];
    if (!(g > 0.0 && g < 0.5)) throw PreconditionError("interpolation: gamma must lie in (0, 1/2)");
    cases[gi].label = "gamma=" + json(g).dump();
    cases[gi].parameters = {{"mid", {1.0, 0.5}}, {"low", {1.0 - g, 0.5 + g}}, {"high", {1.0 + g, 0.5 - g}}};
  }
  for (int t = 0; t < r.trials; ++t) {
    Rng rng = trial_rng(o.seed, static_cast<std::uint64_t>(t));
    const SpectralField3 f = apply_phase(random_field(r.grid, 1, rng, envelope_options(envelope), no_directional_means), phase);
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
      const double g = gammas[gi];
      cases[gi].ratios.push_back(interpolation_check(f, {1.0, 0.5}, {1.0 - g, 0.5 + g}, {1.0 + g, 0.5 - g}));
    }
  }
  for (CaseResult& c : cases) {
    apply_bound(c, 1.0, o.stability_factor);
    r.cases.push_back(std::move(c));
  }
  return r;
}

// -------------------------------------------------------------- composition

SuiteReport composition(const SuiteOptions& o, SuiteReport r) {
  const Params p(o.params, "composition", {"eps_small", "gamma", "phase", "series", "envelope", "bound"});
  const double eps_small = p.get<double>("eps_small", 0.01);
  const double gamma = p.get<double>("gamma", 0.02);
  const double phase = p.get<double>("phase", 0.05);
  const int series = p.get<int>("series", 3);
  const double envelope = p.get<double>("envelope", 0.3);
  const double bound = p.get<double>("bound", 2.0);
  if (!(eps_small > 0.0) || series < 1) throw PreconditionError("composition: eps_small and series must be positive");
  r.grid = Grid::cube(o.grid > 0 ? o.grid : 32);
  r.trials = o.trials > 0 ? o.trials : 50;
  const std::vector<AnisoBesovIndex> indices = {{1.0, 0.5}, {1.0 - gamma, 0.5 + gamma}};
  std::vector<CaseResult> cases(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    cases[i].label = "index=(" + json(indices[i].sigma).dump() + "," + json(indices[i].s).dump() + ")";
    cases[i].parameters = {{"eps_small", eps_small}, {"phase_band", phase}, {"series", series}, {"smallness", json::array()}};
  }
  for (int t = 0; t < r.trials; ++t) {
    Rng rng = trial_rng(o.seed, static_cast<std::uint64_t>(t));
    std::vector<SpectralField3> a;
    NormAccumulator acc(r.grid, 1);
    for (int k = 0; k < series; ++k) {
      a.push_back(random_field(r.grid, 1, rng, envelope_options(envelope), no_directional_means));
      acc.observe(block_norms(a.back(), phase));
    }
    // target smallness drawn in [eps_small / 2, eps_small)
    const double level = eps_small * std::uniform_real_distribution<double>(0.5, 1.0)(rng);
    const double scale = level / acc.norm(TimeExponent::infinity, {1.0, 0.5});
    for (auto& f : a) f *= scale;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      const GSmallnessResult g = g_smallness_check(a, phase, indices[i], eps_small);
      cases[i].ratios.push_back(g.ratio);
      cases[i].preconditions_held = cases[i].preconditions_held && g.precondition_held;
      cases[i].parameters["smallness"].push_back(g.smallness);
    }
  }
  for (CaseResult& c : cases) {
    apply_bound(c, bound, o.stability_factor);
    r.cases.push_back(std::move(c));
  }
  return r;
}

// ----------------------------------------------------------- heat smoothing

SuiteReport heat_smoothing(const SuiteOptions& o, SuiteReport r) {
  const Params p(o.params, "heat_smoothing",
                 {"eps", "beta", "delta", "sigma", "s", "spread", "steps", "horizon", "series", "dt", "substeps", "envelope"});
  const auto eps_list = p.get<std::vector<double>>("eps", {0.2, 0.1, 0.05});
  const double beta = p.get<double>("beta", 0.0);
  const double delta = p.get<double>("delta", 0.0);
  const AnisoBesovIndex index{p.get<double>("sigma", 1.0), p.get<double>("s", 0.5)};
  const double spread = p.get<double>("spread", 1.25);
  const int steps = p.get<int>("steps", 400);
  const double horizon = p.get<double>("horizon", 20.0);
  const int series = p.get<int>("series", 8);
  const double dt = p.get<double>("dt", 0.1);
  const int substeps = p.get<int>("substeps", 8);
  const double envelope = p.get<double>("envelope", 0.3);
  if (eps_list.size() < 2) throw PreconditionError("heat_smoothing: needs at least two eps values");
  if (series < 1) throw PreconditionError("heat_smoothing: series must be positive");
  r.grid = Grid::cube(o.grid > 0 ? o.grid : 16);
  r.trials = o.trials > 0 ? o.trials : 10;

  using TE = TimeExponent;
  struct Heat {
    const char* label;
    bool vertical;
    TE r;
  };
  struct Duhamel {
    const char* label;
    TE r1, r2;
  };
  const std::vector<Heat> heat = {{"heat_full_r=1", false, TE::one},
                                  {"heat_full_r=inf", false, TE::infinity},
                                  {"heat_vertical_r=1", true, TE::one},
                                  {"heat_vertical_r=inf", true, TE::infinity}};
  const std::vector<Duhamel> duhamel = {
      {"duhamel_r1=1_r2=1", TE::one, TE::one}, {"duhamel_r1=inf_r2=1", TE::infinity, TE::one}, {"duhamel_r1=2_r2=2", TE::two, TE::two}};

  const std::size_t n_cases = heat.size() + duhamel.size();
  std::vector<std::vector<double>> fitted(n_cases, std::vector<double>(eps_list.size(), 0.0));
  for (int t = 0; t < r.trials; ++t) {
    Rng rng = trial_rng(o.seed, static_cast<std::uint64_t>(t));
    const SpectralField3 v0 = random_solenoidal(r.grid, rng, envelope_options(envelope), no_directional_means);
    std::vector<SpectralField3> forcing;
    for (int k = 0; k < series; ++k)
      forcing.push_back(random_field(r.grid, 3, rng, envelope_options(envelope), no_directional_means));
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      for (std::size_t c = 0; c < heat.size(); ++c) {
        HeatSmoothingOptions h;
        h.eps = eps_list[e];
        h.index = index;
        h.beta = beta;
        h.r = heat[c].r;
        h.delta = delta;
        h.horizon = horizon;
        h.steps = steps;
        h.vertical_component = heat[c].vertical;
        fitted[c][e] = std::max(fitted[c][e], smoothing_check_41(v0, h).ratio);
      }
      for (std::size_t c = 0; c < duhamel.size(); ++c) {
        DuhamelSmoothingOptions d;
        d.eps = eps_list[e];
        d.index = index;
        d.beta = beta;
        d.r1 = duhamel[c].r1;
        d.r2 = duhamel[c].r2;
        d.delta = delta;
        d.dt = dt;
        d.substeps = substeps;
        auto& slot = fitted[heat.size() + c][e];
        slot = std::max(slot, smoothing_check_42(forcing, d).ratio);
      }
    }
  }
  for (std::size_t c = 0; c < n_cases; ++c) {
    CaseResult cr;
    cr.label = c < heat.size() ? heat[c].label : duhamel[c - heat.size()].label;
    cr.parameters = {{"eps", eps_list}, {"beta", beta}, {"delta", delta}, {"sigma", index.sigma}, {"s", index.s}};
    cr.ratios = fitted[c];
    apply_spread(cr, spread);
    r.cases.push_back(std::move(cr));
  }
  return r;
}

// ------------------------------------------------------------------ damping

SuiteReport damping(const SuiteOptions& o, SuiteReport r) {
  const Params p(o.params, "damping", {"max_segments", "telescoping_tolerance"});
  const int max_segments = p.get<int>("max_segments", 50);
  const double tol = p.get<double>("telescoping_tolerance", 1e-12);
  if (max_segments < 1) throw PreconditionError("damping: max_segments must be positive");
  r.grid = Grid::cube(o.grid > 0 ? o.grid : 16);
  r.trials = o.trials > 0 ? o.trials : 100;
  CaseResult bound, telescoping;
  bound.label = "scaled_over_bound";
  telescoping.label = "telescoping_relative_error";
  for (int t = 0; t < r.trials; ++t) {
    Rng rng = trial_rng(o.seed, static_cast<std::uint64_t>(t));
    const int segments = std::uniform_int_distribution<int>(1, max_segments)(rng);
    const double lambda = std::uniform_real_distribution<double>(0.5, 16.0)(rng);
    const double c = std::uniform_real_distribution<double>(0.25, 2.0)(rng);
    const int l = std::uniform_int_distribution<int>(0, 6)(rng);
    std::exponential_distribution<double> rate(1.0);
    std::uniform_real_distribution<double> step(1e-3, 0.1);
    std::vector<double> thetadot, dt;
    for (int i = 0; i < segments; ++i) {
      thetadot.push_back(0.05 * rate(rng));
      dt.push_back(step(rng));
    }
    const DampingResult d = damping_bound_check(lambda, c, l, thetadot, dt);
    bound.ratios.push_back(d.scaled / d.bound);
    telescoping.ratios.push_back(d.telescoped > 0.0 ? std::abs(d.scaled - d.telescoped) / d.telescoped : d.scaled);
  }
  // saturated profiles reach 1/c up to rounding in lambda 2^l (1/A)
  apply_tolerance(bound, 1.0 + tol);
  apply_tolerance(telescoping, tol);
  r.cases.push_back(std::move(bound));
  r.cases.push_back(std::move(telescoping));
  return r;
}

// ------------------------------------------------------ bony reconstruction

SuiteReport bony_reconstruction(const SuiteOptions& o, SuiteReport r) {
  const Params p(o.params, "bony_reconstruction", {"tolerance", "envelope"});
  const double tol = p.get<double>("tolerance", 1e-12);
  const double envelope = p.get<double>("envelope", 0.3);
  r.grid = Grid::cube(o.grid > 0 ? o.grid : 32);
  r.trials = o.trials > 0 ? o.trials : 20;
  const std::vector<std::pair<Direction, const char*>> dirs = {
      {Direction::horizontal, "horizontal"}, {Direction::vertical, "vertical"}, {Direction::isotropic, "isotropic"}};
  std::vector<CaseResult> cases(2 * dirs.size() + 1);
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    cases[2 * d].label = std::string(dirs[d].second) + "_T+R+Tbar";
    cases[2 * d + 1].label = std::string(dirs[d].second) + "_T+altR";
  }
  cases.back().label = "double_nine_pieces";
  RandomFieldOptions fo = envelope_options(envelope);
  fo.zero_mean = false;
  for (int t = 0; t < r.trials; ++t) {
    Rng rng = trial_rng(o.seed, static_cast<std::uint64_t>(t));
    const SpectralField3 a = random_scalar(r.grid, rng, fo);
    const SpectralField3 b = random_scalar(r.grid, rng, fo);
    const SpectralField3 ab = multiply(a, b);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const BonyPieces pc = bony(a, b, dirs[d].first);
      cases[2 * d].ratios.push_back(rel_diff(pc.T + pc.R + pc.Tbar, ab));
      cases[2 * d + 1].ratios.push_back(rel_diff(pc.alt_T + pc.alt_R, ab));
    }
    const DoubleBonyPieces dbl = double_bony(a, b);
    SpectralField3 sum = ab.zeros_like();
    for (const auto& row : dbl)
      for (const auto& piece : row) sum += piece;
    cases.back().ratios.push_back(rel_diff(sum, ab));
  }
  for (CaseResult& c : cases) {
    apply_tolerance(c, tol);
    r.cases.push_back(std::move(c));
  }
  return r;
}

// -------------------------------------------------------- pressure residual

// a scaled so that ||eps^beta a||_inf = level
SpectralField3 density_at(const Grid& g, Rng& rng, const EpsParams& e, double level, double envelope) {
  SpectralField3 a = random_scalar(g, rng, envelope_options(envelope));
  double m = 0.0;
  for (double v : to_physical(a)) m = std::max(m, std::abs(v));
  return (level / (m * e.density())) * a;
}

SuiteReport pressure_residual(const SuiteOptions& o, SuiteReport r) {
  const Params p(o.params, "pressure_residual",
                 {"alpha", "beta", "gamma", "eps", "density_level", "degeneracy_eps", "degeneracy_amplitude",
                  "max_iters", "envelope"});
  const EpsParams base{p.get<double>("eps", 0.1), p.get<double>("alpha", 0.1), p.get<double>("beta", 0.5),
                       p.get<double>("gamma", 0.02)};
  const double level = p.get<double>("density_level", 0.01);
  const auto degeneracy_eps = p.get<std::vector<double>>("degeneracy_eps", {0.2, 0.1, 0.05});
  const double degeneracy_amplitude = p.get<double>("degeneracy_amplitude", 0.2);
  const int max_iters = p.get<int>("max_iters", 10);
  const double envelope = p.get<double>("envelope", 0.3);
  r.grid = Grid::cube(o.grid > 0 ? o.grid : 32);
  r.trials = o.trials > 0 ? o.trials : 5;

  CaseResult constant, residual, iterations, degeneracy;
  constant.label = "constant_coefficient_vs_direct";
  residual.label = "variable_coefficient_residual";
  iterations.label = "variable_coefficient_iterations";
  degeneracy.label = "vertical_gradient_successive_quotients";
  residual.parameters = {{"density_level", level}, {"max_iters", max_iters}};
  degeneracy.parameters = {{"eps", degeneracy_eps}, {"values", json::array()}};
  PressureConfig cfg;
  cfg.max_iters = max_iters;
  for (int t = 0; t < r.trials; ++t) {
    Rng rng = trial_rng(o.seed, static_cast<std::uint64_t>(t));
    const SpectralField3 v = random_solenoidal(r.grid, rng, envelope_options(envelope));

    const PressureSolution s0 = pressure_solve(SpectralField3(r.grid), v, base, cfg);
    const SpectralField3 direct = base.advection() * inverse_neg_laplacian_eps(div(advect(v, v)), base.eps);
    constant.ratios.push_back(rel_diff(s0.q, direct));

    const SpectralField3 a = density_at(r.grid, rng, base, level, envelope);
    try {
      const PressureSolution s = pressure_solve(a, v, base, cfg);
      residual.ratios.push_back(s.residual);
      iterations.ratios.push_back(s.iters);
    } catch (const ConvergenceError&) {
      residual.ratios.push_back(kInf);
      iterations.ratios.push_back(kInf);
    }

    const SpectralField3 ad = degeneracy_amplitude * random_scalar(r.grid, rng, envelope_options(envelope));
    json values = json::array();
    double prev = 0.0;
    for (std::size_t e = 0; e < degeneracy_eps.size(); ++e) {
      EpsParams pe = base;
      pe.eps = degeneracy_eps[e];
      const PressureSolution s = pressure_solve(ad, v, pe);
      const double vert = pe.eps * pe.eps * d3(s.q).l2_norm();
      values.push_back(vert);
      if (e > 0) degeneracy.ratios.push_back(prev > 0.0 ? vert / prev : kInf);
      prev = vert;
    }
    degeneracy.parameters["values"].push_back(values);
  }
  apply_tolerance(constant, 1e-12);
  apply_tolerance(residual, 1e-10);
  apply_tolerance(iterations, max_iters);
  apply_tolerance(degeneracy, 1.0);
  degeneracy.criterion = "strictly_below_one";
  degeneracy.pass = degeneracy.pass && degeneracy.max_ratio < 1.0;
  for (CaseResult* c : {&constant, &residual, &iterations, &degeneracy}) r.cases.push_back(std::move(*c));
  return r;
}

using SuiteFn = SuiteReport (*)(const SuiteOptions&, SuiteReport);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> m = {
      {"bernstein", bernstein},
      {"product_laws", product_laws},
      {"interpolation", interpolation},
      {"composition", composition},
      {"heat_smoothing", heat_smoothing},
      {"damping", damping},
      {"bony_reconstruction", bony_reconstruction},
      {"pressure_residual", pressure_residual},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"bernstein",      "product_laws", "interpolation",       "composition",
                                                 "heat_smoothing", "damping",      "bony_reconstruction", "pressure_residual"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw PreconditionError("unknown suite '" + name + "'");
  if (opts.grid < 0 || opts.trials < 0) throw PreconditionError("grid and trials must be non-negative");
  if (opts.grid > 0 && opts.grid < 8) throw PreconditionError("grid must be at least 8");
  if (!(opts.stability_factor > 1.0)) throw PreconditionError("stability factor must exceed 1");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  r.suite = name;
  r.seed = opts.seed;
  r.stability_factor = opts.stability_factor;
  r = it->second(opts, std::move(r));
  r.finalize();
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace alp
