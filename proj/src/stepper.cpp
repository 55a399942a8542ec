#include <dlr/stepper.hpp>
#include <dlr/error.hpp>

namespace dlr {

CoefficientSet assemble_coefficients(const PhaseSpace& ps, const Mat& X, const Mat& dX, const Mat& V, const Vec& E,
                                     int m) {
  require(E.size() == ps.x.size(), "assemble_coefficients: field length does not match nx");
  require(V.cols() >= m, "assemble_coefficients: V has fewer than m columns");
  const Vec& v = ps.v.nodes();
  CoefficientSet c;
  c.c1 = V.transpose() * (ps.v.weights().cwiseProduct(v).asDiagonal() * V);
  // (V_k, d_v(f0v V_j))_v is an unweighted sum; f0v V_j is differenced as one array.
  Mat dfv = deriv_v(ps.v, Mat(ps.v.f0v().asDiagonal() * V));
  c.c2 = (V.transpose() * dfv) * ps.v.h();
  const Mat& exact = ps.basis.c2_rows;
  for(int a = 0; a < m; a++) {
    c.c2.row(a).setZero();
    c.c2.row(a).head(m) = exact.row(a);
  }
  c.d1 = (X.transpose() * (E.asDiagonal() * X)) * ps.x.h();
  c.d2 = (X.transpose() * dX) * ps.x.h();
  return c;
}

CoefficientSet assemble_coefficients(const PhaseSpace& ps, const LowRankState& st, const Vec& E) {
  return assemble_coefficients(ps, st.X, deriv_x(ps.x, st.X), st.V, E, st.m);
}

Mat k_step(const LowRankState& st, const Mat& dX, const Vec& E, const CoefficientSet& c, double tau) {
  Mat K = st.K();
  Mat dK = dX * st.S;
  Mat EK = E.asDiagonal() * K;
  return K - tau * (dK * c.c1.transpose()) + tau * (EK * c.c2.transpose());
}

Mat l_step(const PhaseSpace& ps, const LowRankState& st, const CoefficientSet& c, double tau) {
  int m = st.m;
  Index r = st.rank();
  Index nw = r - m;
  if(nw <= 0)
    return Mat(ps.v.size(), 0);
  const Mat& S = st.S;
  const Mat& V = st.V;

  Mat a1 = S.transpose() * c.d1 * S;
  Mat a2 = S.transpose() * c.d2 * S;
  Mat s_dot = -c.d2 * S * c.c1.transpose() + c.d1 * S * c.c2.transpose();
  Mat gram = S.transpose() * S;

  // The 1/f0v of the update is absorbed into deriv_v_weighted.
  Mat dwV = deriv_v_weighted(ps.v, V);
  Mat vV = ps.v.nodes().asDiagonal() * V;
  Mat rhs = dwV * a1.transpose() - vV * a2.transpose() - V * (S.transpose() * s_dot).transpose();

  Mat L = V.rightCols(nw) * gram.bottomRightCorner(nw, nw);
  return L + tau * rhs.rightCols(nw);
}

AugmentedState augment(const PhaseSpace& ps, const LowRankState& st, const Mat& dX, const Mat& K_new,
                       const Mat& L_new) {
  int m = st.m;
  Index r = st.rank();
  AugmentedState aug;
  aug.m = m;

  Mat xcols(ps.x.size(), 3 * r);
  xcols << st.X, dX, K_new;
  Orthonormalized ox = unweighted_orthonormalize(ps.x, xcols);
  aug.Xt = std::move(ox.Q);
  aug.replaced_x = std::move(ox.replaced);

  Mat vcols(ps.v.size(), L_new.cols() + (r - m));
  vcols << L_new, st.V.rightCols(r - m);
  Orthonormalized ov = weighted_extend(ps.v, ps.basis.U, vcols);
  aug.Vt = std::move(ov.Q);
  aug.replaced_v = std::move(ov.replaced);

  aug.M = gram_x(ps.x, aug.Xt, st.X);
  aug.N = gram_v(ps.v, aug.Vt, st.V);
  aug.S_bar = aug.M * st.S * aug.N.transpose();
  return aug;
}

Mat s_step(const PhaseSpace& ps, const AugmentedState& aug, const Vec& E, double tau) {
  Mat dXt = deriv_x(ps.x, aug.Xt);
  CoefficientSet c = assemble_coefficients(ps, aug.Xt, dXt, aug.Vt, E, aug.m);
  const Mat& Sb = aug.S_bar;
  return Sb + tau * (-c.d2 * Sb * c.c1.transpose() + c.d1 * Sb * c.c2.transpose());
}

UnconventionalStep unconventional_step(const PhaseSpace& ps, const LowRankState& st, const Vec& E, double tau) {
  require(st.m == ps.m(), "unconventional_step: state and phase space disagree on m");
  Mat dX = deriv_x(ps.x, st.X);
  CoefficientSet c = assemble_coefficients(ps, st.X, dX, st.V, E, st.m);
  Mat K_new = k_step(st, dX, E, c, tau);
  Mat L_new = l_step(ps, st, c, tau);
  UnconventionalStep out;
  out.aug = augment(ps, st, dX, K_new, L_new);
  out.S_new = s_step(ps, out.aug, E, tau);
  return out;
}

} // namespace dlr
