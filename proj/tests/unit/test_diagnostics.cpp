#include <catch_amalgamated.hpp>

#include <dlr/diagnostics.hpp>
#include <dlr/error.hpp>
#include <dlr/field.hpp>
#include <dlr/truncation.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

using namespace dlr;

namespace {

constexpr double pi = std::numbers::pi;

Vec field_of(const PhaseSpace& ps, const LowRankState& st) {
  return solve_field(ps.x, velocity_moments(ps, st).col(0)).E;
}

DiagnosticsRecord sample_record() {
  DiagnosticsRecord r;
  r.t = 1.25;
  r.mass = 4 * pi;
  r.momentum = -3.3e-17;
  r.energy = 6.2841234567890123;
  r.electric_energy = 1.2566370614359172e-3;
  r.rank = 13;
  r.mass_rel_err = 1.1e-15;
  r.momentum_abs_err = 3.3e-17;
  r.energy_rel_err = 2.0e-9;
  r.cont_mass_res = 5e-13;
  r.cont_mom_res = 7e-13;
  r.cont_energy_gap = 1e-14;
  return r;
}

} // namespace

TEST_CASE("equilibrium step has zero residuals", "[diagnostics]") {
  PhaseSpace ps(SpatialGrid(32, 4 * pi), VelocityGrid(64, -6, 6), 3);
  Scenario sc;
  sc.alpha = 0.0;
  LowRankState st = initial_state(ps, sc, 5);
  Vec E = Vec::Zero(32);
  DiagnosticsReference ref = make_reference(ps, st, E);
  DiagnosticsRecord r = record(ps, st, st, E, E, 1e-3, ref);
  CHECK(r.cont_mass_res <= 1e-14);
  CHECK(r.cont_mom_res <= 1e-14);
  CHECK(r.cont_energy_gap <= 1e-14);
  CHECK(r.mass_rel_err == 0.0);
  CHECK(r.momentum_abs_err == 0.0);
  CHECK(r.energy_rel_err == 0.0);
  CHECK(r.rank == 5);
  CHECK(r.finite());
}

TEST_CASE("initial record", "[diagnostics]") {
  PhaseSpace ps(SpatialGrid(64, 4 * pi), VelocityGrid(128, -9, 9), 3);
  Scenario sc;
  LowRankState st = initial_state(ps, sc, 10);
  Vec E = field_of(ps, st);
  DiagnosticsReference ref = make_reference(ps, st, E);
  DiagnosticsRecord r = record(ps, st, E, ref);
  CHECK(r.t == 0.0);
  CHECK(std::abs(r.mass - 4 * pi) <= 1e-10 * 4 * pi);
  CHECK(std::abs(r.electric_energy - 4e-4 * pi) <= 1e-14);
  CHECK(r.mass_rel_err == 0.0);
  CHECK(r.cont_mass_res == 0.0);
}

TEST_CASE("continuity residuals of a real step", "[diagnostics]") {
  PhaseSpace ps(SpatialGrid(64, 4 * pi), VelocityGrid(64, -6, 6), 3);
  Scenario sc{ScenarioKind::nonlinear_landau, 0.5, 0.5, 0.0};
  LowRankState st = initial_state(ps, sc, 10);
  FieldState fs = solve_field(ps.x, velocity_moments(ps, st).col(0));
  DiagnosticsReference ref = make_reference(ps, st, fs.E);
  RankPolicy pol;
  double tau = 1e-2;
  // j = 0 initially, so the first steps barely change the energy
  for(int n = 0; n < 20; n++) {
    StepResult res = step_and_truncate(ps, st, fs, pol, tau, Neutrality{});
    st = res.state;
    fs = res.field;
  }
  StepResult res = step_and_truncate(ps, st, fs, pol, tau, Neutrality{});
  DiagnosticsRecord r = record(ps, st, res.state, fs.E, res.field.E, tau, ref);
  double eps = std::numeric_limits<double>::epsilon();
  // exact identities: residuals sit at roundoff of the divided difference
  CHECK(r.cont_mass_res <= 1e3 * eps * r.rho_max / tau);
  CHECK(r.cont_mom_res <= 1e3 * eps * r.rho_max / tau);
  CHECK(r.cont_energy_gap <= 1e3 * eps * r.e_max / tau);
  CHECK(r.tau == tau);
  // raw per-step energy drift is O(tau^2), far above the identity gap
  CHECK(r.energy_rel_err > 1e3 * r.cont_energy_gap * tau);
}

TEST_CASE("momentum residual of a non-conservative basis is visible", "[diagnostics]") {
  PhaseSpace ps(SpatialGrid(64, 4 * pi), VelocityGrid(64, -6, 6), 0);
  Scenario sc{ScenarioKind::nonlinear_landau, 0.5, 0.5, 0.0};
  LowRankState st = initial_state(ps, sc, 3);
  FieldState fs = solve_field(ps.x, velocity_moments(ps, st).col(0), Neutrality::unchecked());
  DiagnosticsReference ref = make_reference(ps, st, fs.E);
  RankPolicy pol;
  pol.r_fixed = 3;
  double tau = 1e-2;
  StepResult res = step_and_truncate(ps, st, fs, pol, tau, Neutrality::unchecked());
  DiagnosticsRecord r = record(ps, st, res.state, fs.E, res.field.E, tau, ref);
  CHECK(r.cont_mom_res > 1e-8);
}

TEST_CASE("CSV round trip", "[diagnostics]") {
  std::stringstream ss;
  DiagnosticsWriter w(ss);
  w.header();
  DiagnosticsRecord a = sample_record(), b = sample_record();
  b.t = 2.5;
  b.rank = 25;
  w.write(a);
  w.write(b);

  std::string first;
  std::getline(std::stringstream(ss.str()), first);
  CHECK(first == "t,mass,momentum,energy,electric_energy,rank,mass_rel_err,momentum_abs_err,energy_rel_err,"
                 "cont_mass_res,cont_mom_res,cont_energy_gap");

  std::vector<DiagnosticsRecord> back = read_diagnostics(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].energy == a.energy);
  CHECK(back[0].electric_energy == a.electric_energy);
  CHECK(back[0].momentum == a.momentum);
  CHECK(back[0].cont_energy_gap == a.cont_energy_gap);
  CHECK(back[1].t == 2.5);
  CHECK(back[1].rank == 25);
}

TEST_CASE("CSV schema errors name the column", "[diagnostics]") {
  std::stringstream missing("t,mass,momentum,energy,rank,mass_rel_err,momentum_abs_err,energy_rel_err,"
                            "cont_mass_res,cont_mom_res,cont_energy_gap\n");
  try {
    read_diagnostics(missing);
    FAIL("expected contract_error");
  } catch(const contract_error& e) {
    CHECK(std::string(e.what()).find("electric_energy") != std::string::npos);
  }

  std::stringstream bad_row("t,mass,momentum,energy,electric_energy,rank,mass_rel_err,momentum_abs_err,"
                            "energy_rel_err,cont_mass_res,cont_mom_res,cont_energy_gap\n1,2,3\n");
  CHECK_THROWS_AS(read_diagnostics(bad_row), contract_error);
}

TEST_CASE("non-finite records are detected", "[diagnostics]") {
  DiagnosticsRecord r = sample_record();
  CHECK(r.finite());
  r.energy = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(r.finite());
  r = sample_record();
  r.cont_mom_res = std::numeric_limits<double>::infinity();
  CHECK_FALSE(r.finite());
}
