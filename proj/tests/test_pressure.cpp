#include <cmath>

#include "alp/error.hpp"
#include "alp/paraproduct/composition.hpp"
#include "alp/pressure/pressure.hpp"
#include "alp/spectral/fft.hpp"
#include "alp/spectral/operators.hpp"
#include "alp/spectral/random_field.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alp;
using alp::testing::rel_diff;
using alp::testing::sample;

namespace {

SpectralField3 taylor_green(const Grid& g) {
  return SpectralField3::stack(sample(g, [](double x, double y, double) { return std::sin(x) * std::cos(y); }),
                               sample(g, [](double x, double y, double) { return -std::cos(x) * std::sin(y); }),
                               SpectralField3(g));
}

// a scaled so that ||eps^beta a||_inf equals `level`
SpectralField3 density_at(const Grid& g, alp::Rng& rng, const EpsParams& p, double level) {
  SpectralField3 a = random_scalar(g, rng);
  const PhysicalField x = to_physical(a);
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return (level / (m * p.density())) * a;
}

}  // namespace

TEST_CASE("pressure: zero data") {
  const Grid g = Grid::cube(16);
  const auto s = pressure_solve(SpectralField3(g), SpectralField3(g, 3), EpsParams{});
  CHECK(s.q.is_zero());
  CHECK(s.residual == 0.0);
}

TEST_CASE("pressure: constant coefficients match the direct inversion") {
  const Grid g = Grid::cube(16);
  const EpsParams p{0.2, 0.1, 0.5, 0.02};
  const auto v = taylor_green(g);
  const auto s = pressure_solve(SpectralField3(g), v, p);
  CHECK(s.iters == 1);
  SpectralField3 direct = p.advection() * inverse_neg_laplacian_eps(div(advect(v, v)), p.eps);
  CHECK(rel_diff(s.q, direct) < 1e-12);
  CHECK(s.residual < 1e-12);
}

TEST_CASE("pressure: variable coefficients converge quickly") {
  const Grid g = Grid::cube(32);
  const EpsParams p{0.1, 0.1, 0.5, 0.02};
  alp::Rng rng(2);
  const auto v = random_solenoidal(g, rng);
  const auto a = density_at(g, rng, p, 0.01);
  const auto s = pressure_solve(a, v, p);
  CHECK(s.residual < 1e-10);
  CHECK(s.iters <= 10);
  for (std::size_t i = 1; i < s.residual_history.size(); ++i) {
    CHECK(s.residual_history[i] < s.residual_history[i - 1]);
    if (s.residual_history[i - 1] > 1e-13) CHECK(s.residual_history[i] / s.residual_history[i - 1] < 0.1);
  }

  const PressureTerms t = pressure_terms(a, v, s.q, p);
  CHECK(rel_diff(t.q1 + t.q2 + t.q3 + t.q4 + t.q5, s.q) < 1e-10);
  CHECK(rel_diff(t.q51 + t.q52 + t.q53 + t.q54, t.q5) < 1e-15);

  PressureConfig tight;
  tight.max_iters = 1;
  CHECK_THROWS_AS(pressure_solve(a, v, p, tight), ConvergenceError);
  PressureConfig relaxed;
  relaxed.relaxation = 0.7;
  const auto r = pressure_solve(a, v, p, relaxed);
  CHECK(r.residual < 1e-10);
  CHECK(rel_diff(r.q, s.q) < 1e-9);
}

TEST_CASE("pressure: splitting without density or vertical velocity") {
  const Grid g = Grid::cube(16);
  const EpsParams p{0.3, 0.1, 0.5, 0.02};
  alp::Rng rng(3);
  const auto v = random_solenoidal(g, rng);
  const auto s = pressure_solve(SpectralField3(g), v, p);
  const auto t = pressure_terms(SpectralField3(g), v, s.q, p);
  CHECK(t.q1.is_zero());
  CHECK(t.q5.is_zero());
  CHECK(rel_diff(t.q2 + t.q3 + t.q4, s.q) < 1e-14);

  const auto tg = taylor_green(g);
  const auto a = density_at(g, rng, p, 0.05);
  const auto st = pressure_solve(a, tg, p);
  const auto tt = pressure_terms(a, tg, st.q, p);
  CHECK(tt.q3.is_zero());
  CHECK(tt.q4.is_zero());
}

TEST_CASE("pressure: preconditions") {
  const Grid g = Grid::cube(16);
  const EpsParams p{0.3, 0.1, 0.5, 0.02};
  alp::Rng rng(4);
  const auto v = random_field(g, 3, rng, {});
  CHECK_THROWS_AS(pressure_solve(SpectralField3(g), v, p), PreconditionError);
  SpectralField3 a(g);
  a.at(0) = -2.0 / p.density();
  CHECK_THROWS_AS(pressure_solve(a, leray_project(v), p), DensityPositivityError);
  PressureConfig bad;
  bad.relaxation = 0.0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("pressure: vertical gradient degenerates as eps decreases") {
  const Grid g = Grid::cube(16);
  alp::Rng rng(5);
  const auto v = random_solenoidal(g, rng);
  const auto a = 0.2 * random_scalar(g, rng);
  double prev = INFINITY;
  for (double eps : {0.2, 0.1, 0.05}) {
    const EpsParams p{eps, 0.1, 0.5, 0.02};
    const auto s = pressure_solve(a, v, p);
    const double vert = eps * eps * d3(s.q).l2_norm();
    CHECK(vert < prev);
    prev = vert;
  }
}

TEST_CASE("pressure monitor") {
  const Grid g = Grid::cube(16);
  const EpsParams p{0.1, 0.1, 0.5, 0.02};
  PressureMonitor m(g, p);
  m.accumulate(SpectralField3(g), 0.1, 0.01, 1, 0.0);
  m.record(0.01, 0.0, 0.0);
  CHECK(m.y_norm() == 0.0);
  CHECK(m.y_constant() == 0.0);
  CHECK(m.z_constant() == 0.0);
}
