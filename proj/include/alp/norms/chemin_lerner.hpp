#pragma once

#include <iosfwd>

#include "alp/norms/besov.hpp"

namespace alp {

enum class TimeExponent { one, two, infinity };

/// Per-block time records behind the Chemin-Lerner norms
///   ||u||_{L~^p_T(B^{sigma,s})} = sum_{k,l} 2^{k sigma + l s} ||Delta_k^h Delta_l^v u||_{L^p_T(L2)}.
///
/// Time integrals use left-endpoint rectangles: each sample is held over the
/// step that follows it, so the p = 1, 2 records carry an O(dt) bias.
class NormAccumulator {
 public:
  NormAccumulator() = default;
  NormAccumulator(const Grid& grid, int components);

  /// Adds one sample (already phase-weighted) held for dt > 0.
  void accumulate(const BlockNorms& sample, double dt);
  void accumulate(const SpectralField3& f_phase, double dt);
  /// Updates only the running maximum (for end-of-interval samples).
  void observe(const BlockNorms& sample);

  /// p = 1: sum w * int ||block||; p = 2: sum w * sqrt(int ||block||^2);
  /// p = inf: sum w * max ||block||.
  double norm(TimeExponent p, AnisoBesovIndex idx, ComponentRange range = {}) const;

  double elapsed() const { return elapsed_; }
  int samples() const { return samples_; }
  int components() const { return p1_.components(); }
  const BlockNorms& integral() const { return p1_; }
  const BlockNorms& square_integral() const { return p2_; }
  const BlockNorms& running_max() const { return pinf_; }

  /// CSV with header k,l,p1_integral,p2_square_integral,pinf_max; one row per
  /// (k, l) block, component records summed.
  void write_csv(std::ostream& out) const;

 private:
  void require_compatible(const BlockNorms& sample) const;

  BlockNorms p1_;
  BlockNorms p2_;
  BlockNorms pinf_;
  double elapsed_ = 0.0;
  int samples_ = 0;
};

}  // namespace alp
