#pragma once

#include <dlr/field.hpp>
#include <dlr/state.hpp>

namespace dlr {

// Full-grid f on the same grids and operators as the low-rank solver.
struct DenseState {
  Mat F; // nx x nv samples of f
  double t = 0.0;
};

// -v d_x F + E d_v F, derivatives applied to f itself.
Mat dense_rhs(const PhaseSpace& ps, const Mat& F, const Vec& E);

// int F dv by the rectangle rule, nx entries.
Vec dense_density(const PhaseSpace& ps, const Mat& F);

// Explicit Euler step with E from the density of F.
DenseState dense_step(const PhaseSpace& ps, const DenseState& s, double tau,
                      const Neutrality& nt = Neutrality::unchecked());

} // namespace dlr
