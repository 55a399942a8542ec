#include <dlr/oracle.hpp>
#include <dlr/error.hpp>

namespace dlr {

Mat dense_rhs(const PhaseSpace& ps, const Mat& F, const Vec& E) {
  require(F.rows() == ps.x.size() && F.cols() == ps.v.size(), "dense_rhs: F must be nx x nv");
  require(E.size() == ps.x.size(), "dense_rhs: field length does not match nx");
  Mat fx = deriv_x(ps.x, F);
  Mat fv = deriv_v(ps.v, Mat(F.transpose())).transpose();
  return -fx * ps.v.nodes().asDiagonal() + E.asDiagonal() * fv;
}

Vec dense_density(const PhaseSpace& ps, const Mat& F) {
  require(F.cols() == ps.v.size(), "dense_density: F must have nv columns");
  return F.rowwise().sum() * ps.v.h();
}

DenseState dense_step(const PhaseSpace& ps, const DenseState& s, double tau, const Neutrality& nt) {
  FieldState fs = solve_field(ps.x, dense_density(ps, s.F), nt);
  return {s.F + tau * dense_rhs(ps, s.F, fs.E), s.t + tau};
}

} // namespace dlr
