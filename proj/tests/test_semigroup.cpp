#include <cmath>

#include "alp/error.hpp"
#include "alp/norms/besov.hpp"
#include "alp/semigroup/damping.hpp"
#include "alp/semigroup/heat.hpp"
#include "alp/semigroup/smoothing.hpp"
#include "alp/spectral/operators.hpp"
#include "alp/spectral/projectors.hpp"
#include "alp/spectral/random_field.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alp;
using alp::testing::rel_diff;

TEST_CASE("heat_apply") {
  const Grid g = Grid::cube(16);
  alp::Rng rng(1);
  const auto f = random_scalar(g, rng);
  CHECK(rel_diff(heat_apply(f, 0.0, 0.3), f) == 0.0);
  SpectralField3 m(g);
  m.at(g.flat_of({1, 0, 2})) = 1.0;
  CHECK(heat_apply(m, 1.0, 0.5).at(g.flat_of({1, 0, 2})).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(rel_diff(heat_apply(heat_apply(f, 0.2, 0.3), 0.5, 0.3), heat_apply(f, 0.7, 0.3)) < 1e-12);
  CHECK(rel_diff(heat_apply(h_block(f, 1), 0.2, 0.3), h_block(heat_apply(f, 0.2, 0.3), 1)) < 1e-14);
  CHECK(rel_diff(heat_apply(apply_phase(f, 0.1), 0.2, 0.3), apply_phase(heat_apply(f, 0.2, 0.3), 0.1)) < 1e-13);
  for (AnisoBesovIndex idx : {AnisoBesovIndex{1, 0.5}, AnisoBesovIndex{-1, 2}})
    CHECK(besov_norm(heat_apply(f, 0.3, 0.1), idx) <= besov_norm(f, idx));
  CHECK_THROWS_AS(heat_apply(f, -1.0, 0.3), PreconditionError);
}

TEST_CASE("duhamel") {
  const Grid g = Grid::cube(16);
  const double eps = 0.4;
  SpectralField3 c(g);
  const std::size_t i = g.flat_of({2, 1, 3});
  c.at(i) = Complex(0.7, -0.2);
  const double mu = 5.0 + eps * eps * 9.0;
  ForcingSeries series;
  series.push(0.0, c);
  series.push(0.3, c);
  series.push(0.45, c);
  const auto e = duhamel(series, 1.3, eps);
  const Complex expect = c.at(i) * (1.0 - std::exp(-1.3 * mu)) / mu;
  CHECK(std::abs(e.at(i) - expect) < 1e-14);

  ForcingSeries zero;
  zero.push(0.0, SpectralField3(g));
  CHECK(duhamel(zero, 1.0, eps).is_zero());
  CHECK_THROWS_AS(duhamel(ForcingSeries{}, 1.0, eps), PreconditionError);

  // linearity
  alp::Rng rng(2);
  ForcingSeries a, b, ab;
  for (int k = 0; k < 4; ++k) {
    const auto fa = random_scalar(g, rng), fb = random_scalar(g, rng);
    a.push(0.1 * k, fa);
    b.push(0.1 * k, fb);
    ab.push(0.1 * k, fa + 3.0 * fb);
  }
  CHECK(rel_diff(duhamel(ab, 0.5, eps), duhamel(a, 0.5, eps) + 3.0 * duhamel(b, 0.5, eps)) < 1e-13);
}

TEST_CASE("duhamel solves the forced heat equation to first order") {
  const Grid g = Grid::cube(16);
  const double eps = 0.3;
  alp::Rng rng(3);
  const auto f0 = random_scalar(g, rng), f1 = random_scalar(g, rng);
  auto forcing = [&](double t) { return std::cos(t) * f0 + std::sin(2 * t) * f1; };
  double prev = 0.0;
  for (int n : {20, 40, 80}) {
    const double T = 0.5, h = T / n;
    ForcingSeries s;
    for (int k = 0; k < n; ++k) s.push(k * h, forcing(k * h));
    const auto e1 = duhamel(s, T, eps);
    s.push(T, forcing(T));
    const auto e2 = duhamel(s, T + h, eps);
    const auto residual = (1.0 / h) * (e2 - e1) - laplacian_eps(e1, eps) - forcing(T);
    const double err = residual.l2_norm() / forcing(T).l2_norm();
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.3));
    prev = err;
  }
}

TEST_CASE("smoothing_check_41") {
  const Grid g = Grid::cube(16);
  HeatSmoothingOptions o;
  CHECK(smoothing_check_41(SpectralField3(g, 3), o).ratio == 0.0);

  // Single mode at r = inf: the supremum is attained at t = 0 and 1/r = 0, so both
  // sides are ||v0_Phi||_{B^{sigma,s}}.
  SpectralField3 v(g, 3);
  v.at(0, g.flat_of({0, 2, 1})) = 1.0;
  v.at(0, g.flat_of({0, -2, -1})) = 1.0;
  o.r = TimeExponent::infinity;
  o.delta = 0.1;
  const auto r = smoothing_check_41(v, o);
  CHECK(r.lhs == doctest::Approx(besov_norm(apply_phase(v, 0.1), o.index)).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));

  // r = 1: a single mode with mu = |xi_h|^2 + eps^2 xi_3^2 integrates to 1 / mu.
  o.r = TimeExponent::one;
  o.delta = 0.0;
  o.horizon = 40.0;
  o.steps = 2000;
  const double mu = 4.0 + o.eps * o.eps;
  const auto r1 = smoothing_check_41(v, o);
  CHECK(r1.lhs == doctest::Approx(besov_norm(v, o.index) / mu).epsilon(1e-4));

  o.beta = 2.5;
  CHECK_THROWS_AS(smoothing_check_41(v, o), PreconditionError);
}

TEST_CASE("smoothing_check_42") {
  const Grid g = Grid::cube(16);
  alp::Rng rng(4);
  std::vector<SpectralField3> f;
  for (int k = 0; k < 4; ++k) f.push_back(random_field(g, 3, rng, {}));
  DuhamelSmoothingOptions o;
  o.r1 = TimeExponent::one;
  o.r2 = TimeExponent::infinity;
  CHECK_THROWS_AS(smoothing_check_42(f, o), PreconditionError);
  o.r1 = TimeExponent::infinity;
  o.r2 = TimeExponent::one;
  CHECK(duhamel_exponent_inverse(o.r1, o.r2) == 0.0);
  const auto r = smoothing_check_42(f, o);
  CHECK(r.ratio > 0.0);
  std::vector<SpectralField3> zero(2, SpectralField3(g, 3));
  CHECK(smoothing_check_42(zero, o).ratio == 0.0);
}

TEST_CASE("damping_bound_check") {
  CHECK(damping_bound_check(4.0, 1.0, 2, {0.0, 0.0}, {0.5, 0.5}).scaled == 0.0);
  // thetadot = 1 on [0, 1], c = 1, lambda 2^l = 10
  const auto r = damping_bound_check(2.5, 1.0, 2, {1.0}, {1.0});
  CHECK(r.scaled / 10.0 == doctest::Approx((1.0 - std::exp(-10.0)) / 10.0).epsilon(1e-14));
  CHECK(r.scaled <= r.bound);
  alp::Rng rng(5);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> td(40), dt(40, 0.05);
    for (double& x : td) x = e(rng);
    const auto d = damping_bound_check(3.0, 0.7, trial % 5, td, dt);
    CHECK(d.scaled <= d.bound * (1 + 1e-15));
    CHECK(d.scaled == doctest::Approx(d.telescoped).epsilon(1e-12));
  }
  CHECK_THROWS_AS(damping_bound_check(1.0, 1.0, 0, {-1.0}, {1.0}), PreconditionError);
}
