#pragma once

#include <vector>

#include "alp/spectral/field.hpp"

namespace alp {

/// Regularity pair (sigma, s): horizontal and vertical exponents of the
/// anisotropic Besov norm sum_{k,l} 2^{k sigma + l s} ||Delta_k^h Delta_l^v f||_{L2}.
struct AnisoBesovIndex {
  double sigma = 0.0;
  double s = 0.0;
  friend bool operator==(const AnisoBesovIndex&, const AnisoBesovIndex&) = default;
};

double besov_weight(AnisoBesovIndex idx, int k, int l);

/// Selects components of a vector field: [first, first + count).
struct ComponentRange {
  int first = 0;
  int count = -1;  // -1: all components
};

inline constexpr ComponentRange kHorizontalComponents{0, 2};
inline constexpr ComponentRange kVerticalComponent{2, 1};

/// L2 norms of every (component, k, l) anisotropic block of a field.
///
/// Computed by Parseval: ||Delta_k^h Delta_l^v f||^2 = sum phi_k^2 phi_l^2 |coeff|^2.
/// Modes with xi_h = 0 or xi_3 = 0 belong to no block, so the Besov sums
/// ignore the directional means.
class BlockNorms {
 public:
  BlockNorms() = default;
  BlockNorms(BandRange h, BandRange v, int components);

  BandRange h_range() const { return h_; }
  BandRange v_range() const { return v_; }
  int components() const { return components_; }

  double& at(int c, int k, int l) { return values_[offset(c, k, l)]; }
  double at(int c, int k, int l) const { return values_[offset(c, k, l)]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Besov norm; the vector norm is the sum of the component norms.
  double besov(AnisoBesovIndex idx, ComponentRange range = {}) const;

 private:
  std::size_t offset(int c, int k, int l) const;

  BandRange h_;
  BandRange v_;
  int components_ = 0;
  std::vector<double> values_;
};

/// Block norms of e^{r|D|} f, without materializing the weighted field.
BlockNorms block_norms(const SpectralField3& f, double phase_band = 0.0);

double besov_norm(const SpectralField3& f, AnisoBesovIndex idx);

/// f_Phi = F^{-1}(e^{r|xi|} f^). Throws NumericalError when r |xi|_max > 700.
SpectralField3 apply_phase(const SpectralField3& f, double r);

/// Analytic band bookkeeping: Phi(t, xi) = (delta - lambda theta(t)) |xi|.
struct PhaseState {
  double delta = 0.0;
  double lambda = 1.0;
  double theta = 0.0;
  double gamma = 0.0;

  double band() const { return delta - lambda * theta; }
};

/// Throws NumericalError when e^{r |xi|} would overflow on this grid.
void check_phase_overflow(const ModeTable& table, double r);

}  // namespace alp
