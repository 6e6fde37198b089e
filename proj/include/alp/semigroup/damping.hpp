#pragma once

#include <vector>

namespace alp {

/// Scalar damping integral behind the analyticity regularization:
///   I(t) = int_0^t exp(-c lambda 2^l int_{t'}^t thetadot) thetadot(t') dt'
/// for piecewise-constant thetadot (value[i] on an interval of length dt[i]).
/// Evaluated exactly segment by segment; it telescopes to
/// (1 - exp(-c lambda 2^l Theta)) / (c lambda 2^l) with Theta = int thetadot.
struct DampingResult {
  double scaled = 0.0;  // lambda 2^l * max_t I(t)
  double bound = 0.0;   // 1 / c
  double telescoped = 0.0;  // lambda 2^l times the closed form at the final time
};

/// Throws PreconditionError for a negative sample, non-positive lambda or c,
/// or mismatched lengths.
DampingResult damping_bound_check(double lambda, double c, int l, const std::vector<double>& theta_dot,
                                  const std::vector<double>& dt);

}  // namespace alp
