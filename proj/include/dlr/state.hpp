#pragma once

#include <string>

#include <dlr/basis.hpp>
#include <dlr/grid.hpp>

namespace dlr {

// Grids plus the fixed velocity basis; everything a step needs besides the
// state itself.
struct PhaseSpace {
  PhaseSpace(SpatialGrid x, VelocityGrid v, int m);

  SpatialGrid x;
  VelocityGrid v;
  FixedBasis basis;
  Mat v_powers; // nv x 4: 1, v, v^2, v^3 at the nodes

  int m() const { return basis.m; }
};

// f(x_i, v_j) = f0v(v_j) * sum_kl X(i,k) S(k,l) V(j,l).
//
// X is orthonormal in inner_x, V in inner_v, and the first m columns of V are
// the fixed basis. S is square for states produced by the integrator; the
// augmented intermediate of a step is represented with a rectangular S.
struct LowRankState {
  Mat X;
  Mat S;
  Mat V;
  int m = 0;
  double t = 0.0;

  Index rank() const { return V.cols(); }
  Mat K() const { return X * S; }
};

struct Moments {
  Vec rho;       // int f dv
  Vec j;         // int v f dv
  Vec sigma;     // int v^2 f dv
  Vec heat_flux; // 1/2 int v^3 f dv
  Vec e_density; // 1/2 int v^2 f dv + E^2/2
};

struct Invariants {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};

enum class MomentPath {
  automatic,  // K-column formulas for moments spanned by the fixed basis
  quadrature  // contract every V column with v^p on the grid
};

Mat reconstruct(const PhaseSpace& ps, const LowRankState& st);

// Velocity moments int v^p f dv for p = 0..3 as columns of an nx x 4 matrix.
Mat velocity_moments(const PhaseSpace& ps, const LowRankState& st, MomentPath path = MomentPath::automatic);

Moments moments(const PhaseSpace& ps, const LowRankState& st, const Vec& E,
                MomentPath path = MomentPath::automatic);

Invariants invariants(const PhaseSpace& ps, const LowRankState& st, const Vec& E);

// Deviation of the factor Gram matrices from the identity (Frobenius norm),
// max over X and V.
double orthonormality_defect(const PhaseSpace& ps, const LowRankState& st);

enum class ScenarioKind { linear_landau, nonlinear_landau, two_stream, custom };

std::string to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& s);

// Separable initial data f(0,x,v) = (1 + alpha cos(k x)) * b(v), with
// b(v) = (exp(-(v-vbar)^2/2) + exp(-(v+vbar)^2/2)) / (2 sqrt(2 pi)).
// vbar = 0 is the Landau damping Maxwellian.
struct Scenario {
  ScenarioKind kind = ScenarioKind::linear_landau;
  double alpha = 1e-2;
  double k = 0.5;
  double vbar = 0.0;

  Vec spatial_factor(const SpatialGrid& g) const;
  // f/(f0v * spatial factor), i.e. cosh(vbar v) exp(-vbar^2/2)/sqrt(2 pi).
  Vec velocity_factor(const VelocityGrid& g) const;
  // nx x nv samples of f(0, x, v).
  Mat samples(const SpatialGrid& xg, const VelocityGrid& vg) const;
};

// Exact projection of the rank-1 initial datum onto rank-r factors. Unused
// directions are padded with Fourier modes in x and Hermite polynomials in v
// and carry zero coefficients.
LowRankState initial_state(const PhaseSpace& ps, const Scenario& sc, Index r);

// f split into the part seen by the fixed basis and an SVD of the rest:
//   X S V^T = k_cons U^T + x_rem diag(sigma) w_rem^T,  k_cons = x_cons s_cons.
// Used by the conservative truncation and by the partial-rank energies.
struct ConservativeSplit {
  int m = 0;
  Mat k_cons; // nx x m
  Mat x_cons; // nx x m, orthonormal
  Mat s_cons; // m x m
  Mat x_rem;  // nx x n_sv
  Vec sigma;  // n_sv, nonincreasing
  Mat w_rem;  // nv x n_sv, orthonormal and orthogonal to U
  Mat U;      // nv x m

  Index n_singular() const { return sigma.size(); }
  // Largest total rank this split can produce.
  Index max_rank() const { return m + n_singular(); }
};

ConservativeSplit split_conservative(const PhaseSpace& ps, const Mat& X, const Mat& S, const Mat& V);

// Velocity moments (as in velocity_moments) of the rank-l truncation of a split.
Mat velocity_moments(const PhaseSpace& ps, const ConservativeSplit& sp, Index l);

} // namespace dlr
