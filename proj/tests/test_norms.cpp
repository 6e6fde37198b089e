#include <cmath>
#include <sstream>

#include "alp/error.hpp"
#include "alp/norms/chemin_lerner.hpp"
#include "alp/norms/data_norms.hpp"
#include "alp/spectral/cutoffs.hpp"
#include "alp/spectral/projectors.hpp"
#include "alp/spectral/random_field.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alp;
using alp::testing::rel_diff;
using alp::testing::sample;

namespace {

// Sum over j of 2^{j e} phi(2^-j rho), straight from the cutoff profile.
double weighted_phi_sum(double rho, double e) {
  const CutoffPair cut = build_cutoffs();
  double s = 0.0;
  for (int j = -30; j <= 30; ++j) s += std::exp2(j * e) * cut.phi_band(j, rho);
  return s;
}

}  // namespace

TEST_CASE("besov_norm of cos(2 x1) cos(2 x3)") {
  const Grid g = Grid::cube(16);
  const auto f = sample(g, [](double x, double, double z) { return std::cos(2 * x) * std::cos(2 * z); });
  const double l2 = alp::testing::physical_l2(f);
  CHECK(std::abs(l2 - 0.5) < 1e-14);
  CHECK(std::abs(besov_norm(f, {0, 0}) - 0.5) < 1e-10);
  const double oracle = weighted_phi_sum(2.0, 1.0) * weighted_phi_sum(2.0, 0.5) * l2;
  CHECK(std::abs(besov_norm(f, {1, 0.5}) - oracle) < 1e-10);
  CHECK(besov_norm(f.zeros_like(), {1, 0.5}) == 0.0);
}

TEST_CASE("besov_norm ignores directional means") {
  const Grid g = Grid::cube(16);
  const auto f = sample(g, [](double x, double, double) { return 1.0 + std::cos(3 * x); });
  CHECK(besov_norm(f, {0, 0}) < 1e-14);
}

TEST_CASE("besov_norm is a norm") {
  const Grid g = Grid::cube(16);
  alp::Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_field(g, 3, rng, {});
    const auto b = random_field(g, 3, rng, {});
    for (AnisoBesovIndex idx : {AnisoBesovIndex{1, 0.5}, AnisoBesovIndex{-0.5, 0.25}}) {
      const double na = besov_norm(a, idx), nb = besov_norm(b, idx), nab = besov_norm(a + b, idx);
      CHECK(nab <= na + nb + 1e-10 * (na + nb));
      CHECK(std::abs(besov_norm(-2.5 * a, idx) - 2.5 * na) < 1e-10 * na);
    }
  }
}

TEST_CASE("apply_phase") {
  const Grid g = Grid::cube(16);
  SpectralField3 f(g);
  f.at(g.flat_of({3, 4, 0})) = 1.0;
  f.at(g.flat_of({-3, -4, 0})) = 1.0;
  const auto p = apply_phase(f, 0.1);
  CHECK(std::abs(p.at(g.flat_of({3, 4, 0})).real() - std::exp(0.5)) < 1e-14);
  CHECK(std::abs(std::exp(0.5) - 1.64872) < 1e-5);

  alp::Rng rng(4);
  const auto r = random_scalar(g, rng);
  CHECK(rel_diff(apply_phase(r, 0.0), r) == 0.0);
  CHECK(rel_diff(apply_phase(apply_phase(r, 0.2), 0.3), apply_phase(r, 0.5)) < 1e-12);
  CHECK(rel_diff(h_block(apply_phase(r, 0.2), 1), apply_phase(h_block(r, 1), 0.2)) < 1e-14);

  const auto bn = block_norms(r, 0.2);
  CHECK(std::abs(bn.besov({1, 0.5}) - besov_norm(apply_phase(r, 0.2), {1, 0.5})) < 1e-12 * bn.besov({1, 0.5}));

  double prev = 0.0;
  for (double band : {0.0, 0.05, 0.1, 0.2, 0.4}) {
    const double n = besov_norm(apply_phase(r, band), {1, 0.5});
    CHECK(n >= prev);
    prev = n;
  }
  CHECK_THROWS_AS(apply_phase(r, 100.0), NumericalError);
}

TEST_CASE("phase subadditivity on sampled triples") {
  alp::Rng rng(8);
  std::uniform_real_distribution<double> u(-20, 20);
  const double r = 0.3;
  for (int i = 0; i < 1000; ++i) {
    const double xi[3] = {u(rng), u(rng), u(rng)};
    const double eta[3] = {u(rng), u(rng), u(rng)};
    const double n_xi = std::hypot(xi[0], xi[1], xi[2]);
    const double n_eta = std::hypot(eta[0], eta[1], eta[2]);
    const double n_diff = std::hypot(xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]);
    CHECK(r * n_xi <= r * n_diff + r * n_eta + 1e-12);
  }
}

TEST_CASE("x_norms") {
  const Grid g = Grid::cube(16);
  SpectralField3 a0(g), v0(g, 3);
  XNorms zero = x_norms(a0, v0, 0.3, 0.1);
  CHECK(zero.x1 == 0.0);
  CHECK(zero.x2 == 0.0);
  CHECK(zero.x3 == 0.0);

  // v0 = (cos(x2 + 2 x3), 0, 0): |xi_h| = 1, |xi_3| = 2, |xi| = sqrt 5.
  const double delta = 0.3, gamma = 0.1;
  const auto c = sample(g, [](double, double y, double z) { return std::cos(y + 2 * z); });
  const auto v = SpectralField3::stack(c, c.zeros_like(), c.zeros_like());
  const XNorms x = x_norms(a0, v, delta, gamma);
  const double amp = std::exp(delta * std::sqrt(5.0)) / std::sqrt(2.0);
  const double x2 = amp * (weighted_phi_sum(1.0, -0.5 + gamma) * weighted_phi_sum(2.0, -gamma) +
                           weighted_phi_sum(1.0, 0.0) * weighted_phi_sum(2.0, -0.5));
  const double x3 = amp * (weighted_phi_sum(1.0, gamma) * weighted_phi_sum(2.0, 0.5 - gamma) +
                           weighted_phi_sum(1.0, -gamma) * weighted_phi_sum(2.0, 0.5 + gamma));
  CHECK(std::abs(x.x2 - x2) < 1e-10 * x2);
  CHECK(std::abs(x.x3 - x3) < 1e-10 * x3);

  const XNorms xs = x_norms(a0, -3.0 * v, delta, gamma);
  CHECK(std::abs(xs.x2 - 3.0 * x.x2) < 1e-10 * x.x2);
  CHECK(std::abs(xs.x3 - 3.0 * x.x3) < 1e-10 * x.x3);

  const auto bad = SpectralField3::stack(sample(g, [](double x, double, double) { return std::sin(x); }),
                                         c.zeros_like(), c.zeros_like());
  CHECK_THROWS_AS(x_norms(a0, bad, delta, gamma), PreconditionError);
}

TEST_CASE("interpolation_check") {
  const Grid g = Grid::cube(32);
  const double gm = 0.1;
  const AnisoBesovIndex mid{1, 0.5}, low{1 - gm, 0.5 + gm}, high{1 + gm, 0.5 - gm};
  CHECK(interpolation_check(SpectralField3(g), mid, low, high) == 0.0);

  // One block with k < l: horizontal radius 2 sits in k = 0, 1; vertical radius 12 only in l = 3.
  SpectralField3 f(g);
  f.at(g.flat_of({2, 0, 12})) = 1.0;
  f.at(g.flat_of({-2, 0, -12})) = 1.0;
  const auto blk = v_block(h_block(f, 1), 3);
  CHECK(!blk.is_zero());
  CHECK(interpolation_check(blk, mid, low, high) <= 1.0);

  CHECK_THROWS_AS(interpolation_check(blk, mid, high, low), PreconditionError);
  CHECK_THROWS_AS(interpolation_check(blk, mid, {0.9, 0.5}, high), PreconditionError);
}

TEST_CASE("Chemin-Lerner accumulation") {
  const Grid g = Grid::cube(16);
  alp::Rng rng(12);
  const AnisoBesovIndex idx{1, 0.5};
  const auto f = random_scalar(g, rng);
  NormAccumulator acc(g, 1);
  for (int i = 0; i < 10; ++i) acc.accumulate(f, 0.1);
  CHECK(std::abs(acc.norm(TimeExponent::one, idx) - 1.0 * besov_norm(f, idx)) < 1e-12);
  CHECK(std::abs(acc.norm(TimeExponent::infinity, idx) - besov_norm(f, idx)) < 1e-12);
  CHECK(acc.elapsed() == doctest::Approx(1.0));
  CHECK_THROWS_AS(acc.accumulate(f, 0.0), PreconditionError);

  for (int trial = 0; trial < 20; ++trial) {
    const auto s1 = random_scalar(g, rng);
    const auto s2 = 3.0 * random_scalar(g, rng);
    NormAccumulator two(g, 1);
    two.accumulate(s1, 0.3);
    two.accumulate(s2, 0.7);
    const double b1 = besov_norm(s1, idx), b2 = besov_norm(s2, idx);
    const double plain = std::sqrt(0.3 * b1 * b1 + 0.7 * b2 * b2);
    CHECK(two.norm(TimeExponent::two, idx) >= plain * (1 - 1e-12));
    CHECK(two.norm(TimeExponent::infinity, idx) >= std::max(b1, b2) * (1 - 1e-12));
  }

  std::ostringstream csv;
  acc.write_csv(csv);
  CHECK(csv.str().rfind("k,l,p1_integral,p2_square_integral,pinf_max\n", 0) == 0);
}
