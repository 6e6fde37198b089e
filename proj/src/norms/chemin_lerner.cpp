#include "alp/norms/chemin_lerner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "alp/error.hpp"

namespace alp {

NormAccumulator::NormAccumulator(const Grid& grid, int components) {
  auto t = mode_table(grid);
  p1_ = BlockNorms(t->range_h, t->range_v, components);
  p2_ = p1_;
  pinf_ = p1_;
}

void NormAccumulator::require_compatible(const BlockNorms& sample) const {
  if (sample.components() != p1_.components() || sample.h_range().first != p1_.h_range().first ||
      sample.h_range().last != p1_.h_range().last || sample.v_range().first != p1_.v_range().first ||
      sample.v_range().last != p1_.v_range().last) {
    throw PreconditionError("NormAccumulator: sample layout does not match accumulator");
  }
}

void NormAccumulator::accumulate(const BlockNorms& sample, double dt) {
  if (!(dt > 0.0)) throw PreconditionError("NormAccumulator: dt must be positive");
  require_compatible(sample);
  const auto& s = sample.values();
  auto& a1 = p1_.values();
  auto& a2 = p2_.values();
  auto& am = pinf_.values();
  for (std::size_t i = 0; i < s.size(); ++i) {
    a1[i] += dt * s[i];
    a2[i] += dt * s[i] * s[i];
    am[i] = std::max(am[i], s[i]);
  }
  elapsed_ += dt;
  ++samples_;
}

void NormAccumulator::accumulate(const SpectralField3& f_phase, double dt) { accumulate(block_norms(f_phase), dt); }

void NormAccumulator::observe(const BlockNorms& sample) {
  require_compatible(sample);
  const auto& s = sample.values();
  auto& am = pinf_.values();
  for (std::size_t i = 0; i < s.size(); ++i) am[i] = std::max(am[i], s[i]);
}

double NormAccumulator::norm(TimeExponent p, AnisoBesovIndex idx, ComponentRange range) const {
  switch (p) {
    case TimeExponent::one:
      return p1_.besov(idx, range);
    case TimeExponent::infinity:
      return pinf_.besov(idx, range);
    case TimeExponent::two: {
      BlockNorms root = p2_;
      for (double& x : root.values()) x = std::sqrt(x);
      return root.besov(idx, range);
    }
  }
  return 0.0;
}

void NormAccumulator::write_csv(std::ostream& out) const {
  out << "k,l,p1_integral,p2_square_integral,pinf_max\n";
  out << std::setprecision(17);
  const BandRange h = p1_.h_range();
  const BandRange v = p1_.v_range();
  for (int k = h.first; k <= h.last; ++k) {
    for (int l = v.first; l <= v.last; ++l) {
      double s1 = 0.0, s2 = 0.0, sm = 0.0;
      for (int c = 0; c < p1_.components(); ++c) {
        s1 += p1_.at(c, k, l);
        s2 += p2_.at(c, k, l);
        sm += pinf_.at(c, k, l);
      }
      out << k << ',' << l << ',' << s1 << ',' << s2 << ',' << sm << '\n';
    }
  }
}

}  // namespace alp
