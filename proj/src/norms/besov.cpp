#include "alp/norms/besov.hpp"

#include <cmath>
#include <sstream>

#include "alp/error.hpp"

namespace alp {

namespace {
constexpr double kMaxExponent = 700.0;
}

double besov_weight(AnisoBesovIndex idx, int k, int l) { return std::exp2(k * idx.sigma + l * idx.s); }

BlockNorms::BlockNorms(BandRange h, BandRange v, int components) : h_(h), v_(v), components_(components) {
  values_.assign(static_cast<std::size_t>(components) * static_cast<std::size_t>(h.count()) *
                     static_cast<std::size_t>(v.count()),
                 0.0);
}

std::size_t BlockNorms::offset(int c, int k, int l) const {
  return (static_cast<std::size_t>(c) * static_cast<std::size_t>(h_.count()) + static_cast<std::size_t>(k - h_.first)) *
             static_cast<std::size_t>(v_.count()) +
         static_cast<std::size_t>(l - v_.first);
}

double BlockNorms::besov(AnisoBesovIndex idx, ComponentRange range) const {
  const int first = range.first;
  const int count = range.count < 0 ? components_ - first : range.count;
  if (first < 0 || first + count > components_) throw PreconditionError("besov: component range out of bounds");
  double total = 0.0;
  for (int c = first; c < first + count; ++c) {
    for (int k = h_.first; k <= h_.last; ++k) {
      for (int l = v_.first; l <= v_.last; ++l) {
        const double block = at(c, k, l);
        if (block != 0.0) total += besov_weight(idx, k, l) * block;
      }
    }
  }
  return total;
}

void check_phase_overflow(const ModeTable& table, double r) {
  if (r * table.max_radius > kMaxExponent) {
    std::ostringstream msg;
    msg << "phase overflow: band " << r << " times max |xi| " << table.max_radius << " exceeds " << kMaxExponent;
    throw NumericalError(msg.str());
  }
}

BlockNorms block_norms(const SpectralField3& f, double phase_band) {
  const ModeTable& t = f.modes();
  check_phase_overflow(t, phase_band);
  BlockNorms out(t.range_h, t.range_v, f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t i = 0; i < f.mode_count(); ++i) {
      const double amp2 = std::norm(comp[i]);
      if (amp2 == 0.0) continue;
      const BandWeights& bh = t.bands_h[i];
      const BandWeights& bv = t.bands_v[i];
      if (bh.weight[0] == 0.0 || bv.weight[0] == 0.0) continue;
      const double weighted = phase_band == 0.0 ? amp2 : amp2 * std::exp(2.0 * phase_band * t.radius[i]);
      for (int sh = 0; sh < 2; ++sh) {
        const double wh = bh.weight[static_cast<std::size_t>(sh)];
        if (wh == 0.0) continue;
        for (int sv = 0; sv < 2; ++sv) {
          const double wv = bv.weight[static_cast<std::size_t>(sv)];
          if (wv == 0.0) continue;
          out.at(c, bh.first + sh, bv.first + sv) += wh * wh * wv * wv * weighted;
        }
      }
    }
  }
  for (double& x : out.values()) x = std::sqrt(x);
  return out;
}

double besov_norm(const SpectralField3& f, AnisoBesovIndex idx) { return block_norms(f).besov(idx); }

SpectralField3 apply_phase(const SpectralField3& f, double r) {
  const ModeTable& t = f.modes();
  check_phase_overflow(t, r);
  if (r == 0.0) return f;
  return apply_multiplier(f, [&](std::size_t i) { return std::exp(r * t.radius[i]); });
}

}  // namespace alp
