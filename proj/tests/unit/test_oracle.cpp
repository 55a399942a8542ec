#include <catch_amalgamated.hpp>

#include <dlr/error.hpp>
#include <dlr/oracle.hpp>

#include <cmath>
#include <numbers>

using namespace dlr;

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

TEST_CASE("Maxwellian without field is stationary", "[oracle]") {
  PhaseSpace ps(SpatialGrid(16, 4 * pi), VelocityGrid(32, -6, 6), 0);
  Scenario sc;
  sc.alpha = 0.0;
  Mat F = sc.samples(ps.x, ps.v);
  CHECK(dense_rhs(ps, F, Vec::Zero(16)).cwiseAbs().maxCoeff() == 0.0);
  DenseState s = dense_step(ps, {F, 0.0}, 0.1);
  CHECK((s.F - F).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.t == 0.1);
}

TEST_CASE("x-independent f only feels the field", "[oracle]") {
  PhaseSpace ps(SpatialGrid(16, 2 * pi), VelocityGrid(16, -4, 4), 0);
  Vec g = (ps.v.nodes().array().square() * -0.3).exp().matrix();
  Mat F = Vec::Ones(16) * g.transpose();
  Vec E = (ps.x.nodes().array()).sin().matrix();
  Mat rhs = dense_rhs(ps, F, E);
  Vec dg = deriv_v(ps.v, g);
  Mat expect = E * dg.transpose();
  CHECK((rhs - expect).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("linear Landau transport term", "[oracle]") {
  PhaseSpace ps(SpatialGrid(64, 4 * pi), VelocityGrid(64, -6, 6), 0);
  Scenario sc; // alpha 1e-2, k 0.5
  Mat F = sc.samples(ps.x, ps.v);
  Mat rhs = dense_rhs(ps, F, Vec::Zero(64));
  for(Index i = 0; i < 64; i++)
    for(Index j = 0; j < 64; j++) {
      double x = ps.x.nodes()(i), v = ps.v.nodes()(j);
      double dfdx = -1e-2 * 0.5 * std::sin(0.5 * x) * std::exp(-0.5 * v * v) / std::sqrt(2 * pi);
      CHECK(std::abs(rhs(i, j) + v * dfdx) <= 1e-10);
    }
}

TEST_CASE("dense step with tau = 0", "[oracle]") {
  PhaseSpace ps(SpatialGrid(16, 4 * pi), VelocityGrid(16, -6, 6), 0);
  Scenario sc{ScenarioKind::nonlinear_landau, 0.5, 0.5, 0.0};
  Mat F = sc.samples(ps.x, ps.v);
  CHECK(dense_step(ps, {F, 0.0}, 0.0).F == F);
}

TEST_CASE("dense mass conservation", "[oracle]") {
  for(auto d : {XDerivative::spectral, XDerivative::centered}) {
    PhaseSpace ps(SpatialGrid(32, 4 * pi, d), VelocityGrid(48, -9, 9), 0);
    Scenario sc{ScenarioKind::nonlinear_landau, 0.5, 0.5, 0.0};
    DenseState s{sc.samples(ps.x, ps.v), 0.0};
    double m0 = s.F.sum() * ps.x.h() * ps.v.h();
    for(int n = 0; n < 50; n++) {
      double before = s.F.sum() * ps.x.h() * ps.v.h();
      s = dense_step(ps, s, 1e-2);
      double after = s.F.sum() * ps.x.h() * ps.v.h();
      // boundary flux in v is ~f(9), far below roundoff
      CHECK(std::abs(after - before) <= 1e-12 * m0);
    }
    CHECK(dense_density(ps, s.F).size() == 32);
  }
}

TEST_CASE("shape mismatch is rejected", "[oracle]") {
  PhaseSpace ps(SpatialGrid(16, 1.0), VelocityGrid(16, -6, 6), 0);
  CHECK_THROWS_AS(dense_rhs(ps, Mat::Zero(15, 16), Vec::Zero(16)), contract_error);
  CHECK_THROWS_AS(dense_rhs(ps, Mat::Zero(16, 16), Vec::Zero(15)), contract_error);
}
