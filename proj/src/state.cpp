#include <dlr/state.hpp>
#include <dlr/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace dlr {

PhaseSpace::PhaseSpace(SpatialGrid xg, VelocityGrid vg, int m)
  : x(std::move(xg)), v(std::move(vg)), basis(build_fixed_basis(v, m)) {
  v_powers.resize(v.size(), 4);
  const Vec& nodes = v.nodes();
  v_powers.col(0).setOnes();
  for(int p = 1; p < 4; p++)
    v_powers.col(p) = v_powers.col(p - 1).cwiseProduct(nodes);
}

Mat reconstruct(const PhaseSpace& ps, const LowRankState& st) {
  return (st.X * st.S * st.V.transpose()) * ps.v.f0v().asDiagonal();
}

namespace {

// Columns of the fixed-basis fast path, shared by states and splits.
void fast_moments(const FixedBasis& b, const Mat& k_cons, Mat& out) {
  for(int p = 0; p < 3; p++) {
    if(!b.has_moment(p))
      continue;
    out.col(p).setZero();
    for(int a = 0; a <= p; a++)
      out.col(p) += b.moment(p, a) * k_cons.col(a);
  }
}

} // namespace

Mat velocity_moments(const PhaseSpace& ps, const LowRankState& st, MomentPath path) {
  require(st.V.rows() == ps.v.size() && st.X.rows() == ps.x.size(), "velocity_moments: factor sizes");
  Mat K = st.K();
  // <v^p, V_l>_v for every column l
  Mat vm = gram_v(ps.v, st.V, ps.v_powers);
  Mat out = K * vm;
  if(path == MomentPath::automatic && st.m > 0)
    fast_moments(ps.basis, K.leftCols(st.m), out);
  return out;
}

Moments moments(const PhaseSpace& ps, const LowRankState& st, const Vec& E, MomentPath path) {
  require(E.size() == ps.x.size(), "moments: field length does not match nx");
  Mat vm = velocity_moments(ps, st, path);
  Moments mo;
  mo.rho = vm.col(0);
  mo.j = vm.col(1);
  mo.sigma = vm.col(2);
  mo.heat_flux = 0.5 * vm.col(3);
  mo.e_density = 0.5 * vm.col(2) + 0.5 * E.cwiseProduct(E);
  return mo;
}

Invariants invariants(const PhaseSpace& ps, const LowRankState& st, const Vec& E) {
  Moments mo = moments(ps, st, E);
  return {integrate_x(ps.x, mo.rho), integrate_x(ps.x, mo.j), integrate_x(ps.x, mo.e_density)};
}

double orthonormality_defect(const PhaseSpace& ps, const LowRankState& st) {
  Mat gx = gram_x(ps.x, st.X, st.X) - Mat::Identity(st.X.cols(), st.X.cols());
  Mat gv = gram_v(ps.v, st.V, st.V) - Mat::Identity(st.V.cols(), st.V.cols());
  return std::max(gx.norm(), gv.norm());
}

std::string to_string(ScenarioKind k) {
  switch(k) {
  case ScenarioKind::linear_landau: return "linear_landau";
  case ScenarioKind::nonlinear_landau: return "nonlinear_landau";
  case ScenarioKind::two_stream: return "two_stream";
  case ScenarioKind::custom: return "custom";
  }
  return "?";
}

ScenarioKind scenario_from_string(const std::string& s) {
  for(auto k : {ScenarioKind::linear_landau, ScenarioKind::nonlinear_landau, ScenarioKind::two_stream,
                ScenarioKind::custom})
    if(to_string(k) == s)
      return k;
  throw contract_error("unknown scenario '" + s + "'");
}

Vec Scenario::spatial_factor(const SpatialGrid& g) const {
  return (1.0 + alpha * (k * g.nodes().array()).cos()).matrix();
}

Vec Scenario::velocity_factor(const VelocityGrid& g) const {
  double c = std::exp(-0.5 * vbar * vbar) / std::sqrt(2.0 * std::numbers::pi);
  return (c * (vbar * g.nodes().array()).cosh()).matrix();
}

Mat Scenario::samples(const SpatialGrid& xg, const VelocityGrid& vg) const {
  const Vec& v = vg.nodes();
  Vec b = ((-0.5 * (v.array() - vbar).square()).exp() + (-0.5 * (v.array() + vbar).square()).exp()) /
          (2.0 * std::sqrt(2.0 * std::numbers::pi));
  return spatial_factor(xg) * b.transpose();
}

LowRankState initial_state(const PhaseSpace& ps, const Scenario& sc, Index r) {
  int m = ps.m();
  require(r >= m && r >= 1, "initial_state: rank must be at least max(m, 1)");
  require(r <= ps.x.size() && r <= ps.v.size(), "initial_state: rank exceeds grid size");

  Vec gx = sc.spatial_factor(ps.x);
  Vec hv = sc.velocity_factor(ps.v);

  Mat X = complete_x(ps.x, unweighted_orthonormalize(ps.x, gx).Q, r);
  // with r = m the velocity factor must already lie in span(U); its fallback column is dropped
  Mat Q = weighted_extend(ps.v, ps.basis.U, hv).Q;
  Mat V = complete_v(ps.v, Q.leftCols(std::min<Index>(Q.cols(), r)), r);
  require(X.cols() == r && V.cols() == r, "initial_state: could not complete the bases to rank r");

  LowRankState st;
  st.m = m;
  st.t = 0.0;
  Vec a = gram_x(ps.x, X, gx);
  Vec b = gram_v(ps.v, V, hv);
  st.S = a * b.transpose();
  st.X = std::move(X);
  st.V = std::move(V);
  return st;
}

ConservativeSplit split_conservative(const PhaseSpace& ps, const Mat& X, const Mat& S, const Mat& V) {
  int m = ps.m();
  require(V.cols() >= m && S.cols() == V.cols() && S.rows() == X.cols(), "split_conservative: factor shapes");
  ConservativeSplit sp;
  sp.m = m;
  sp.U = V.leftCols(m);

  Mat K = X * S;
  sp.k_cons = K.leftCols(m);
  if(m > 0) {
    Orthonormalized qc = unweighted_orthonormalize(ps.x, sp.k_cons, SignConvention::positive_diagonal);
    require(qc.Q.cols() == m, "split_conservative: nx smaller than m");
    sp.x_cons = qc.Q;
    sp.s_cons = qc.R;
  } else {
    sp.x_cons = Mat(ps.x.size(), 0);
    sp.s_cons = Mat(0, 0);
  }

  Index nrem = V.cols() - m;
  if(nrem == 0) {
    sp.x_rem = Mat(ps.x.size(), 0);
    sp.w_rem = Mat(ps.v.size(), 0);
    sp.sigma = Vec(0);
    return sp;
  }
  Orthonormalized qr = unweighted_orthonormalize(ps.x, K.rightCols(nrem), SignConvention::positive_diagonal);
  Eigen::JacobiSVD<Mat> svd(qr.R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Mat uh = svd.matrixU();
  Mat wh = svd.matrixV();
  for(Index c = 0; c < uh.cols(); c++) {
    Index imax;
    uh.col(c).cwiseAbs().maxCoeff(&imax);
    if(uh(imax, c) < 0.0) {
      uh.col(c) *= -1.0;
      wh.col(c) *= -1.0;
    }
  }
  sp.sigma = svd.singularValues();
  sp.x_rem = qr.Q * uh;
  sp.w_rem = V.rightCols(nrem) * wh;
  return sp;
}

Mat velocity_moments(const PhaseSpace& ps, const ConservativeSplit& sp, Index l) {
  int m = sp.m;
  require(l >= m && l <= sp.max_rank(), "velocity_moments: rank out of range");
  Index nk = l - m;
  Mat out = sp.k_cons * gram_v(ps.v, sp.U, ps.v_powers);
  if(nk > 0) {
    Mat wm = gram_v(ps.v, sp.w_rem.leftCols(nk), ps.v_powers); // nk x 4
    out += sp.x_rem.leftCols(nk) * sp.sigma.head(nk).asDiagonal() * wm;
  }
  fast_moments(ps.basis, sp.k_cons, out);
  return out;
}

} // namespace dlr
