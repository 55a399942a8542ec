#pragma once

#include <limits>

#include <dlr/state.hpp>

namespace dlr {

struct FieldState {
  Vec rho;
  Vec E;
  double electric_energy = 0.0;
};

// Neutralizing background density and the allowed deviation of mean(rho)
// from it. The Poisson problem dE/dx = background - rho is only periodic-
// solvable if the two means agree.
struct Neutrality {
  double background = 1.0;
  double tolerance = 1e-8;

  static Neutrality unchecked(double background = 1.0) {
    return {background, std::numeric_limits<double>::infinity()};
  }
};

// Solve deriv_x(E) = background - rho in Fourier space with zero-mean E, using
// the symbol of the grid's x derivative.
// Throws solvability_error if |mean(rho) - background| > tolerance.
FieldState solve_field(const SpatialGrid& g, const Vec& rho, const Neutrality& nt = {});

double electric_energy(const SpatialGrid& g, const Vec& E);

// Electric energy of the rank-l truncation of a state: the fixed-basis block
// plus the l - m leading remainder singular directions.
double electric_energy_partial(const PhaseSpace& ps, const LowRankState& st, Index l, const Neutrality& nt = {});

} // namespace dlr
