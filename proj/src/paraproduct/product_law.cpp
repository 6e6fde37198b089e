#include "alp/paraproduct/product_law.hpp"

#include <cmath>
#include <limits>

#include "alp/error.hpp"
#include "alp/spectral/fft.hpp"
#include "alp/spectral/random_field.hpp"
#include "alp/stats.hpp"

namespace alp {
namespace {

constexpr double kTol = 1e-12;

double inverse(TimeExponent p) {
  switch (p) {
    case TimeExponent::one:
      return 1.0;
    case TimeExponent::two:
      return 0.5;
    case TimeExponent::infinity:
      return 0.0;
  }
  return 0.0;
}

bool equal(double x, double y) { return std::abs(x - y) <= kTol * (1.0 + std::abs(x)); }
bool at_most(double x, double bound) { return x <= bound + kTol; }

void fail(const std::string& why) { throw PreconditionError("product law: " + why); }

void require_equal_sums(const std::vector<AnisoBesovIndex>& idx) {
  const double sig = idx[0].sigma + idx[1].sigma;
  const double s = idx[0].s + idx[1].s;
  if (!(sig > 0.0)) fail("horizontal index sum must be positive");
  if (!(s > 0.0)) fail("vertical index sum must be positive");
  for (std::size_t i = 2; i < idx.size(); i += 2) {
    if (!equal(idx[i].sigma + idx[i + 1].sigma, sig)) fail("horizontal index sums differ between pairs");
    if (!equal(idx[i].s + idx[i + 1].s, s)) fail("vertical index sums differ between pairs");
  }
}

void require_exponent_balance(const std::vector<TimeExponent>& p) {
  const double inv = inverse(p[0]);
  for (std::size_t i = 1; i + 1 < p.size(); i += 2) {
    if (!equal(inverse(p[i]) + inverse(p[i + 1]), inv)) fail("time exponents violate 1/p = 1/p1 + 1/p2");
  }
}

NormAccumulator series_norms(const std::vector<SpectralField3>& series, double band, double dt) {
  NormAccumulator acc(series.front().grid(), 1);
  for (const SpectralField3& f : series) {
    if (dt > 0.0)
      acc.accumulate(block_norms(f, band), dt);
    else
      acc.observe(block_norms(f, band));
  }
  return acc;
}

std::vector<SpectralField3> random_series(const Grid& g, Rng& rng, int count, double envelope) {
  std::vector<SpectralField3> out;
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  for (int i = 0; i < count; ++i) {
    RandomFieldOptions o;
    o.envelope = envelope;
    o.amplitude = amp(rng);
    out.push_back(random_field(g, 1, rng, o, no_directional_means));
  }
  return out;
}

}  // namespace

const char* to_string(ProductLaw law) {
  switch (law) {
    case ProductLaw::four_term:
      return "four_term";
    case ProductLaw::two_term:
      return "two_term";
    case ProductLaw::one_term:
      return "one_term";
  }
  return "?";
}

const char* to_string(TimeExponent p) {
  switch (p) {
    case TimeExponent::one:
      return "1";
    case TimeExponent::two:
      return "2";
    case TimeExponent::infinity:
      return "inf";
  }
  return "?";
}

AnisoBesovIndex ProductLawCase::target() const {
  return {indices.at(0).sigma + indices.at(1).sigma - 1.0, indices.at(0).s + indices.at(1).s - 0.5};
}

nlohmann::json ProductLawCase::to_json() const {
  nlohmann::json j;
  j["law"] = to_string(law);
  j["sigma"] = nlohmann::json::array();
  j["s"] = nlohmann::json::array();
  for (const auto& i : indices) {
    j["sigma"].push_back(i.sigma);
    j["s"].push_back(i.s);
  }
  if (!exponents.empty()) {
    j["p"] = nlohmann::json::array();
    for (TimeExponent p : exponents) j["p"].push_back(to_string(p));
  }
  return j;
}

void validate(const ProductLawCase& c) {
  const auto& x = c.indices;
  auto sig = [&](int i) { return x[static_cast<std::size_t>(i - 1)].sigma; };
  auto s = [&](int i) { return x[static_cast<std::size_t>(i - 1)].s; };
  switch (c.law) {
    case ProductLaw::four_term:
      if (x.size() != 8) fail("four_term needs 8 index pairs");
      if (!c.exponents.empty()) fail("four_term takes no time exponents");
      require_equal_sums(x);
      for (int i : {1, 4, 5, 8})
        if (!at_most(sig(i), 1.0)) fail("sigma1, sigma4, sigma5, sigma8 must be <= 1");
      for (int i : {1, 4, 6, 7})
        if (!at_most(s(i), 0.5)) fail("s1, s4, s6, s7 must be <= 1/2");
      break;
    case ProductLaw::two_term: {
      if (x.size() != 4) fail("two_term needs 4 index pairs");
      if (c.exponents.size() != 5) fail("two_term needs exponents (p, p1, p2, p3, p4)");
      require_equal_sums(x);
      require_exponent_balance(c.exponents);
      bool first = true, second = true;
      for (int i : {1, 2, 3, 4}) first = first && at_most(sig(i), 1.0);
      first = first && at_most(s(1), 0.5) && at_most(s(4), 0.5);
      for (int i : {1, 2, 3, 4}) second = second && at_most(s(i), 0.5);
      second = second && at_most(sig(1), 1.0) && at_most(sig(4), 1.0);
      if (!first && !second) fail("two_term indices satisfy neither admissible set");
      break;
    }
    case ProductLaw::one_term:
      if (x.size() != 2) fail("one_term needs 2 index pairs");
      if (c.exponents.size() != 3) fail("one_term needs exponents (p, p1, p2)");
      require_equal_sums(x);
      require_exponent_balance(c.exponents);
      if (!at_most(sig(1), 1.0) || !at_most(sig(2), 1.0)) fail("sigma1, sigma2 must be <= 1");
      if (!at_most(s(1), 0.5) || !at_most(s(2), 0.5)) fail("s1, s2 must be <= 1/2");
      break;
  }
}

double product_law_ratio(const ProductLawCase& c, const std::vector<SpectralField3>& a_series,
                         const std::vector<SpectralField3>& b_series, double phase_band) {
  validate(c);
  if (a_series.empty() || a_series.size() != b_series.size()) fail("series must be non-empty and of equal length");
  std::vector<SpectralField3> products;
  products.reserve(a_series.size());
  for (std::size_t i = 0; i < a_series.size(); ++i) products.push_back(multiply(a_series[i], b_series[i]));

  double lhs = 0.0, rhs = 0.0;
  if (c.law == ProductLaw::four_term) {
    if (a_series.size() != 1) fail("four_term takes single fields");
    const BlockNorms a = block_norms(a_series[0], phase_band);
    const BlockNorms b = block_norms(b_series[0], phase_band);
    lhs = block_norms(products[0], phase_band).besov(c.target());
    for (std::size_t i = 0; i < 8; i += 2) rhs += a.besov(c.indices[i]) * b.besov(c.indices[i + 1]);
  } else {
    const double dt = 1.0 / static_cast<double>(a_series.size());
    const NormAccumulator a = series_norms(a_series, phase_band, dt);
    const NormAccumulator b = series_norms(b_series, phase_band, dt);
    lhs = series_norms(products, phase_band, dt).norm(c.exponents[0], c.target());
    for (std::size_t i = 0; i < c.indices.size(); i += 2) {
      rhs += a.norm(c.exponents[i + 1], c.indices[i]) * b.norm(c.exponents[i + 2], c.indices[i + 1]);
    }
  }
  if (rhs == 0.0) {
    if (lhs != 0.0) throw NumericalError("product law: zero right-hand side with nonzero product");
    return 0.0;
  }
  return lhs / rhs;
}

FitReport product_law_fit(const ProductLawCase& c, const ProductLawOptions& opts) {
  validate(c);
  opts.grid.validate();
  if (opts.trials < 1) fail("trials must be >= 1");
  const int samples = c.law == ProductLaw::four_term ? 1 : opts.time_samples;
  if (samples < 1) fail("time_samples must be >= 1");
  FitReport r;
  r.name = to_string(c.law);
  r.index_tuple = c.to_json();
  r.trials = opts.trials;
  r.grid = opts.grid;
  r.seed = opts.seed;
  for (int t = 0; t < opts.trials; ++t) {
    Rng rng = trial_rng(opts.seed, static_cast<std::uint64_t>(t));
    const auto a = random_series(opts.grid, rng, samples, opts.envelope);
    const auto b = random_series(opts.grid, rng, samples, opts.envelope);
    r.ratios.push_back(product_law_ratio(c, a, b, opts.phase_band));
  }
  const RatioStats st = summarize(r.ratios);
  r.max_ratio = st.max;
  r.median_ratio = st.median;
  return r;
}

nlohmann::json FitReport::to_json() const {
  return {{"name", name},
          {"index_tuple", index_tuple},
          {"trials", trials},
          {"grid", {grid.n1, grid.n2, grid.n3}},
          {"max_ratio", max_ratio},
          {"median_ratio", median_ratio},
          {"seed", seed}};
}

}  // namespace alp
