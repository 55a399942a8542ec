#pragma once

#include <vector>

#include <dlr/state.hpp>

namespace dlr {

// Galerkin coefficients of -v d_x f + E d_v f on a pair of bases:
//   c1(k,j) = <V_k, v V_j>_v          c2(k,j) = (V_k, d_v(f0v V_j))_v
//   d1(i,k) = <X_i, E X_k>_x          d2(i,k) = <X_i, d_x X_k>_x
// Rows of c2 that belong to fixed basis functions are set to their closed
// form so that no boundary leakage of the velocity stencil enters the
// conserved moments.
struct CoefficientSet {
  Mat c1, c2, d1, d2;
};

// Both bases plus dX = d_x X, which callers usually need anyway.
CoefficientSet assemble_coefficients(const PhaseSpace& ps, const Mat& X, const Mat& dX, const Mat& V, const Vec& E,
                                     int m);
CoefficientSet assemble_coefficients(const PhaseSpace& ps, const LowRankState& st, const Vec& E);

// K^{n+1} = K^n + tau (V_k, RHS)_v, nx x r.
Mat k_step(const LowRankState& st, const Mat& dX, const Vec& E, const CoefficientSet& c, double tau);

// Update of L_q = sum_ip S_iq S_ip W_p for q > m, nv x (r - m).
// L is only defined up to the Galerkin correction, which lies in span{V^n}.
Mat l_step(const PhaseSpace& ps, const LowRankState& st, const CoefficientSet& c, double tau);

// Augmented bases of one step and the old solution expressed in them.
struct AugmentedState {
  Mat Xt;    // nx x p, orthonormal basis of span{X^n, d_x X^n, K^{n+1}}
  Mat Vt;    // nv x q, [U | orthonormal basis of span{L^{n+1}, W^n} minus U]
  Mat S_bar; // p x q, M S^n N^T
  Mat M;     // p x r, <Xt_k, X_i^n>_x
  Mat N;     // q x r, <V_j^n, Vt_l>_v transposed
  int m = 0;
  std::vector<Index> replaced_x, replaced_v;
};

AugmentedState augment(const PhaseSpace& ps, const LowRankState& st, const Mat& dX, const Mat& K_new,
                       const Mat& L_new);

// Galerkin step for the coefficients on the augmented bases, p x q.
Mat s_step(const PhaseSpace& ps, const AugmentedState& aug, const Vec& E, double tau);

// Steps 1-4 of the integrator: the augmented state at t + tau before any
// truncation. E must be the field of `st`.
struct UnconventionalStep {
  AugmentedState aug;
  Mat S_new; // p x q
};

UnconventionalStep unconventional_step(const PhaseSpace& ps, const LowRankState& st, const Vec& E, double tau);

} // namespace dlr
