#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "alp/norms/chemin_lerner.hpp"

namespace alp {

/// Anisotropic product laws ||[ab]_Phi||_{B^{sigma1+sigma2-1, s1+s2-1/2}} <= C * RHS.
///
/// four_term: Besov norms, RHS = sum_{i<4} ||a_Phi||_{idx[2i]} ||b_Phi||_{idx[2i+1]};
///   needs equal sums sigma_{2i+1}+sigma_{2i+2} > 0 and s_{2i+1}+s_{2i+2} > 0 across
///   pairs, sigma1, sigma4, sigma5, sigma8 <= 1 and s1, s4, s6, s7 <= 1/2.
/// two_term: Chemin-Lerner norms with time exponents (p; p1, p2, p3, p4),
///   1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4, two (a, b) pairs with equal positive sums and
///   either sigma1..4 <= 1, s1, s4 <= 1/2, or s1..4 <= 1/2, sigma1, sigma4 <= 1.
/// one_term: Chemin-Lerner norms (p; p1, p2), one pair with sigma1, sigma2 <= 1,
///   s1, s2 <= 1/2 and positive sums.
enum class ProductLaw { four_term, two_term, one_term };

struct ProductLawCase {
  ProductLaw law = ProductLaw::four_term;
  std::vector<AnisoBesovIndex> indices;  // a, b alternating
  std::vector<TimeExponent> exponents;   // p first; empty for four_term

  AnisoBesovIndex target() const;
  nlohmann::json to_json() const;
};

/// Throws PreconditionError for an inadmissible case.
void validate(const ProductLawCase& c);

struct ProductLawOptions {
  Grid grid = Grid::cube(32);
  int trials = 100;
  std::uint64_t seed = 1;
  double phase_band = 0.0;  // Phi = phase_band |xi|
  double envelope = 0.3;
  int time_samples = 4;     // Chemin-Lerner laws only
};

struct FitReport {
  std::string name;
  nlohmann::json index_tuple;
  int trials = 0;
  Grid grid;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double median_ratio = 0.0;

  nlohmann::json to_json() const;
};

/// LHS / RHS for a single pair of fields (Besov law) or series (Chemin-Lerner
/// laws). A zero RHS gives 0 when the LHS vanishes and throws otherwise.
double product_law_ratio(const ProductLawCase& c, const std::vector<SpectralField3>& a_series,
                         const std::vector<SpectralField3>& b_series, double phase_band);

/// Ratios over random trials; fields carry the envelope exp(-envelope |xi|)
/// and no directional-mean modes.
FitReport product_law_fit(const ProductLawCase& c, const ProductLawOptions& opts);

const char* to_string(ProductLaw law);
const char* to_string(TimeExponent p);

}  // namespace alp
