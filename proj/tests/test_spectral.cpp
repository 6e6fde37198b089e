#include <cmath>
#include <numbers>
#include <sstream>

#include "alp/error.hpp"
#include "alp/spectral/cutoffs.hpp"
#include "alp/spectral/fft.hpp"
#include "alp/spectral/operators.hpp"
#include "alp/spectral/projectors.hpp"
#include "alp/spectral/random_field.hpp"
#include "alp/spectral/snapshot.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alp;
using alp::testing::rel_diff;
using alp::testing::sample;

TEST_CASE("cutoffs: partition of unity on log-spaced samples") {
  const CutoffPair cut = build_cutoffs();
  double worst_full = 0.0, worst_inhom = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double tau = std::pow(10.0, -3.0 + 6.0 * i / 9999.0);
    double full = 0.0, inhom = cut.chi(tau);
    for (int j = -20; j <= 20; ++j) {
      const double p = cut.phi_band(j, tau);
      full += p;
      if (j >= 0) inhom += p;
    }
    worst_full = std::max(worst_full, std::abs(full - 1.0));
    worst_inhom = std::max(worst_inhom, std::abs(inhom - 1.0));
  }
  CHECK(worst_full < 1e-12);
  CHECK(worst_inhom < 1e-12);
}

TEST_CASE("cutoffs: support and endpoint values") {
  const CutoffPair cut = build_cutoffs();
  CHECK(cut.chi(0.0) == 1.0);
  CHECK(cut.phi(0.0) == 0.0);
  CHECK(cut.chi(0.75) == 1.0);
  CHECK(cut.chi(4.0 / 3.0) == 0.0);
  CHECK(cut.phi(0.7499) == 0.0);
  CHECK(cut.phi(2.6667) == 0.0);
  CHECK(cut.phi(1.0) > 0.0);
  // tau = 5: only j = 1, 2 have 5 / 2^j inside [3/4, 8/3]
  double sum = 0.0;
  for (int j = -10; j <= 10; ++j) {
    const double p = cut.phi_band(j, 5.0);
    if (j != 1 && j != 2) CHECK(p == 0.0);
    sum += p;
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("h_block on a single horizontal mode") {
  const Grid g = Grid::cube(16);
  const CutoffPair cut = build_cutoffs();
  const auto f = sample(g, [](double x, double, double) { return std::cos(4 * x); });
  const auto b1 = h_block(f, 1);
  CHECK(rel_diff(b1, cut.phi(2.0) * f) < 1e-13);
  CHECK(cut.phi(2.0) > 0.0);
  CHECK(cut.phi(2.0) < 1.0);
  SpectralField3 sum = f.zeros_like();
  for (int k = -3; k <= 6; ++k) sum += h_block(f, k);
  CHECK((sum - f).l2_norm() < 1e-12);
  CHECK(h_block(f, 5).is_zero());
}

TEST_CASE("v_block support and lowpass identities") {
  const Grid g = Grid::cube(16);
  const auto f = sample(g, [](double, double, double z) { return std::cos(2 * z); });
  for (int l = -3; l <= 5; ++l) CHECK((v_block(f, l).l2_norm() < 1e-15) == (l != 0 && l != 1));

  alp::Rng rng(7);
  const auto r = random_scalar(g, rng, {0.3, 1.0, false, false});
  for (Direction d : {Direction::horizontal, Direction::vertical, Direction::isotropic}) {
    const BandRange range = band_range(g, d);
    for (int k = range.first; k <= range.last; ++k) {
      SpectralField3 acc = lowpass(r, d, k);
      for (int j = k; j <= range.last; ++j) acc += block(r, d, j);
      CHECK((acc - r).l2_norm() < 1e-12);
    }
    SpectralField3 rec = zero_part(r, d);
    for (int j = range.first; j <= range.last; ++j) rec += block(r, d, j);
    CHECK((rec - r).l2_norm() < 1e-12);
  }
  CHECK(iso_block(r.zeros_like(), 1).is_zero());
}

TEST_CASE("blocks two bands apart are orthogonal") {
  const Grid g = Grid::cube(16);
  alp::Rng rng(3);
  const auto r = random_scalar(g, rng);
  const auto a = h_block(r, 1);
  const auto b = h_block(r, 3);
  Complex dot = 0.0;
  for (std::size_t i = 0; i < a.mode_count(); ++i) dot += a.at(i) * std::conj(b.at(i));
  CHECK(std::abs(dot) == 0.0);
}

TEST_CASE("differential operators") {
  const Grid g = Grid::cube(16);
  SpectralField3 f(g);
  f.at(g.flat_of({1, 0, 2})) = 1.0;
  const auto lap = laplacian_eps(f, 0.5);
  CHECK(lap.at(g.flat_of({1, 0, 2})) == Complex(-2.0, 0.0));

  SpectralField3 m(g);
  m.at(g.flat_of({0, 0, 1})) = 1.0;
  const auto ne = nabla_eps(m, 0.1);
  const auto ns = nabla_sup_eps(m, 0.1);
  CHECK(std::abs(ne.at(2, g.flat_of({0, 0, 1})) - Complex(0, 0.1)) < 1e-15);
  CHECK(std::abs(ns.at(2, g.flat_of({0, 0, 1})) - Complex(0, 0.01)) < 1e-15);

  alp::Rng rng(11);
  const auto v = random_field(g, 3, rng, {});
  const auto p = leray_project(v);
  CHECK(div(p).l2_norm() < 1e-12 * v.l2_norm());
  CHECK(rel_diff(leray_project(p), p) < 1e-12);

  const auto s = random_scalar(g, rng);
  SpectralField3 grad = SpectralField3::stack(partial(s, 0), partial(s, 1), partial(s, 2));
  CHECK(leray_project(grad).l2_norm() < 1e-12 * grad.l2_norm());

  // derivatives commute with projectors
  CHECK(rel_diff(partial(h_block(s, 1), 2), h_block(partial(s, 2), 1)) < 1e-14);
  // grad_h matches the analytic derivative of sin(x1 + 2 x2)
  const auto w = sample(g, [](double x, double y, double) { return std::sin(x + 2 * y); });
  const auto gw = grad_h(w);
  const auto expect2 = sample(g, [](double x, double y, double) { return 2 * std::cos(x + 2 * y); });
  CHECK(rel_diff(gw.extract(1), expect2) < 1e-13);
  CHECK(gw.extract(2).is_zero());
}

TEST_CASE("dealias") {
  const Grid g = Grid::cube(16);
  const auto high = sample(g, [](double x, double, double) { return std::cos(7 * x); });
  CHECK(!high.is_zero());
  CHECK(dealias(high).l2_norm() < 1e-14);
  const auto low = sample(g, [](double x, double, double z) { return std::cos(2 * x) * std::sin(5 * z); });
  CHECK(rel_diff(dealias(low), low) < 1e-14);
  alp::Rng rng(5);
  const auto r = random_scalar(g, rng, {0.3, 1.0, false, true});
  CHECK(rel_diff(dealias(dealias(r)), dealias(r)) == 0.0);
}

TEST_CASE("normalization and transforms") {
  const Grid g = Grid::cube(16);
  const auto c = sample(g, [](double x, double, double) { return std::cos(x); });
  CHECK(std::abs(c.l2_norm() - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(alp::testing::physical_l2(c) - c.l2_norm()) < 1e-14);
  alp::Rng rng(2);
  const auto r = random_scalar(g, rng);
  CHECK(r.hermitian_defect() < 1e-15);
  CHECK(rel_diff(from_physical(g, to_physical(r)), r) < 1e-14);
  CHECK_THROWS_AS(Grid::cube(6).validate(), PreconditionError);
  CHECK_THROWS_AS((Grid{8, 9, 8}).validate(), PreconditionError);
}

TEST_CASE("snapshot round trip") {
  const Grid g{8, 10, 12};
  alp::Rng rng(9);
  const auto v = random_field(g, 3, rng, {});
  std::stringstream buf;
  write_snapshot(buf, v, 0.25);
  const Snapshot s = read_snapshot(buf);
  CHECK(s.time == 0.25);
  CHECK(s.field.grid() == g);
  CHECK((s.field - v).l2_norm() == 0.0);
}
