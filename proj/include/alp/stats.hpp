#pragma once

#include <cstdint>
#include <span>

#include "alp/spectral/random_field.hpp"

namespace alp {

struct RatioStats {
  double max = 0.0;
  double median = 0.0;
  double min = 0.0;
};

/// Max / median / min of a non-empty sample (median of an even count is the
/// mean of the two middle values).
RatioStats summarize(std::span<const double> values);

/// Least-squares slope and intercept of y against x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Independent, reproducible stream for trial `trial` of a run seeded by `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace alp
