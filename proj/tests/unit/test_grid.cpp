#include <catch_amalgamated.hpp>

#include <dlr/error.hpp>
#include <dlr/grid.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace dlr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

Vec random_vec(Index n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d;
  Vec v(n);
  for(Index i = 0; i < n; i++)
    v(i) = d(gen);
  return v;
}

} // namespace

TEST_CASE("spatial grid layout", "[grid]") {
  SpatialGrid g(128, 4 * pi);
  CHECK(g.h() * double(g.size()) == g.length());
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(127) < g.length());
  CHECK_THROWS_AS(SpatialGrid(0, 1.0), contract_error);
}

TEST_CASE("velocity grid layout", "[grid]") {
  VelocityGrid g(128, -6.0, 6.0);
  CHECK(g.nodes()(0) > -6.0);
  CHECK(g.nodes()(127) < 6.0);
  for(Index j = 0; j < g.size(); j++) {
    CHECK_THAT(g.f0v()(j), WithinRel(std::exp(-0.5 * g.nodes()(j) * g.nodes()(j)), 1e-15));
    CHECK(g.f0v()(j) > 0.0);
    CHECK(g.nodes()(j) == -g.nodes()(g.size() - 1 - j));
  }
}

TEST_CASE("deriv_x of a constant vanishes", "[grid]") {
  for(auto d : {XDerivative::spectral, XDerivative::centered}) {
    SpatialGrid g(64, 4 * pi, d);
    Vec du = deriv_x(g, Vec(Vec::Constant(64, 3.0)));
    CHECK(du.cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("spectral deriv_x of a resolved mode", "[grid]") {
  SpatialGrid g(128, 4 * pi);
  Vec u = (0.5 * g.nodes().array()).sin().matrix();
  Vec expect = 0.5 * (0.5 * g.nodes().array()).cos().matrix();
  CHECK((deriv_x(g, u) - expect).cwiseAbs().maxCoeff() <= 1e-12);

  // twice: -k^2 times the mode
  Vec w = (1.5 * g.nodes().array()).cos().matrix();
  CHECK((deriv_x(g, deriv_x(g, w)) + 2.25 * w).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("centered deriv_x matches its symbol", "[grid]") {
  SpatialGrid g(128, 4 * pi, XDerivative::centered);
  double k = 0.5, s = std::sin(k * g.h()) / g.h();
  Vec u = (k * g.nodes().array()).sin().matrix();
  Vec expect = s * (k * g.nodes().array()).cos().matrix();
  CHECK((deriv_x(g, u) - expect).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(std::abs(g.symbol(1) - s) <= 1e-14);
}

TEST_CASE("discrete divergence theorem and skew symmetry in x", "[grid]") {
  for(auto d : {XDerivative::spectral, XDerivative::centered}) {
    SpatialGrid g(96, 10 * pi, d);
    for(unsigned seed = 1; seed <= 5; seed++) {
      Vec u = random_vec(96, seed), w = random_vec(96, seed + 100);
      CHECK(std::abs(integrate_x(g, deriv_x(g, u))) <= 1e-12 * u.cwiseAbs().maxCoeff());
      double ibp = inner_x(g, u, deriv_x(g, w)) + inner_x(g, deriv_x(g, u), w);
      CHECK(std::abs(ibp) <= 1e-12 * u.norm() * w.norm());
    }
  }
}

TEST_CASE("deriv_v stencil", "[grid]") {
  VelocityGrid g(32, -6.0, 6.0);
  double c = 2.0;
  Vec dc = deriv_v(g, Vec(Vec::Constant(32, c)));
  for(Index j = 1; j + 1 < 32; j++)
    CHECK(dc(j) == 0.0);
  CHECK_THAT(dc(0), WithinRel(c / (2 * g.h()), 1e-14));
  CHECK_THAT(dc(31), WithinRel(-c / (2 * g.h()), 1e-14));

  Vec dv = deriv_v(g, g.nodes());
  for(Index j = 1; j + 1 < 32; j++)
    CHECK_THAT(dv(j), WithinAbs(1.0, 1e-13));
}

TEST_CASE("discrete integration by parts in v", "[grid]") {
  VelocityGrid g(128, -6.0, 6.0);
  const Vec& v = g.nodes();
  double lhs = (v.cwiseProduct(deriv_v(g, g.f0v()))).sum() * g.h();
  double rhs = -g.f0v().sum() * g.h();
  CHECK(std::abs(lhs - rhs) <= std::exp(-18.0) * 36.0);

  Vec a = (0.3 * v.array()).sin().matrix(), b = (v.array().square() * 0.1).cos().matrix();
  double sum = (a.cwiseProduct(deriv_v(g, Vec(g.f0v().cwiseProduct(b))))).sum() * g.h() +
               (deriv_v(g, a).cwiseProduct(g.f0v().cwiseProduct(b))).sum() * g.h();
  CHECK(std::abs(sum) <= 1e-9);
}

TEST_CASE("weighted derivative agrees with deriv_v(f0v w)/f0v", "[grid]") {
  VelocityGrid g(64, -4.0, 4.0);
  Mat w(64, 2);
  w.col(0) = g.nodes();
  w.col(1) = (g.nodes().array().square() - 1.0).matrix();
  Mat a = deriv_v_weighted(g, w);
  Mat b = deriv_v(g, Mat(g.f0v().asDiagonal() * w));
  for(Index j = 0; j < 64; j++)
    for(Index c = 0; c < 2; c++)
      CHECK_THAT(a(j, c) * g.f0v()(j), WithinAbs(b(j, c), 1e-13));
}

TEST_CASE("quadrature", "[grid]") {
  SpatialGrid g(128, 4 * pi);
  CHECK(std::abs(integrate_x(g, Vec((0.5 * g.nodes().array()).cos().matrix()))) <= 1e-13);
  SpatialGrid g10(128, 10 * pi);
  CHECK(integrate_x(g10, Vec::Ones(128)) == g10.length());
}

// The midpoint rule carries an endpoint term h^2/24 |f'(6)| ~ 7e-11 here.
TEST_CASE("velocity quadrature of the weight against erf", "[grid][erf]") {
  VelocityGrid v(128, -6.0, 6.0);
  double exact = std::sqrt(2 * pi) * std::erf(6.0 / std::sqrt(2.0));
  CHECK_THAT(integrate_v(v, v.f0v()), WithinRel(exact, 1e-12));
}

TEST_CASE("weighted inner products of low-order polynomials", "[grid]") {
  VelocityGrid g(256, -10.0, 10.0);
  Vec one = Vec::Ones(256);
  CHECK(std::abs(inner_v(g, one, g.nodes())) <= 1e-14);
  CHECK_THAT(inner_v(g, one, one), WithinAbs(std::sqrt(2 * pi), 1e-10));
  CHECK_THAT(inner_v(g, g.nodes(), g.nodes()), WithinAbs(std::sqrt(2 * pi), 1e-10));
  CHECK(inner_v(g, g.nodes(), g.nodes()) >= 0.0);
}

TEST_CASE("length mismatches are contract errors", "[grid]") {
  SpatialGrid g(16, 1.0);
  VelocityGrid v(16, -1.0, 1.0);
  CHECK_THROWS_AS(deriv_x(g, Vec(Vec::Zero(15))), contract_error);
  CHECK_THROWS_AS(deriv_v(v, Vec(Vec::Zero(17))), contract_error);
  CHECK_THROWS_AS(integrate_x(g, Vec::Zero(3)), contract_error);
  CHECK_THROWS_AS(inner_v(v, Vec::Zero(16), Vec::Zero(15)), contract_error);
  CHECK_THROWS_AS(gram_x(g, Mat::Zero(15, 2), Mat::Zero(16, 2)), contract_error);
}
