#include <dlr/grid.hpp>
#include <dlr/error.hpp>

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

namespace dlr {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_len(Index got, Index want, const char* what) {
  if(got != want)
    throw contract_error(std::string(what) + ": length " + std::to_string(got) +
                         " does not match grid size " + std::to_string(want));
}

} // namespace

Fourier::Fourier(Index n) : n_(n) {
  require(n > 0, "Fourier: size must be positive");
  std::vector<double> re(n);
  std::vector<cplx> sp(n / 2 + 1);
  auto* spf = reinterpret_cast<fftw_complex*>(sp.data());
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_r2c_1d(int(n), re.data(), spf, flags);
  plan_bwd_ = fftw_plan_dft_c2r_1d(int(n), spf, re.data(), flags);
}

Fourier::~Fourier() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fourier::forward(const double* in, cplx* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void Fourier::backward(cplx* in, double* out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_), reinterpret_cast<fftw_complex*>(in), out);
  double s = 1.0 / double(n_);
  for(Index i = 0; i < n_; i++)
    out[i] *= s;
}

SpatialGrid::SpatialGrid(Index n, double length, XDerivative d) : n_(n), deriv_(d) {
  require(n > 0, "SpatialGrid: nx must be positive");
  require(length > 0.0, "SpatialGrid: length must be positive");
  h_ = length / double(n);
  length_ = h_ * double(n);
  nodes_.resize(n);
  for(Index i = 0; i < n; i++)
    nodes_(i) = double(i) * h_;
  fft_ = std::make_shared<const Fourier>(n);
}

double SpatialGrid::wavenumber(Index k) const {
  if(n_ % 2 == 0 && k == n_ / 2)
    return 0.0;
  return 2.0 * std::numbers::pi * double(k) / length_;
}

double SpatialGrid::symbol(Index k) const {
  if(deriv_ == XDerivative::spectral)
    return wavenumber(k);
  if(n_ % 2 == 0 && k == n_ / 2)
    return 0.0;
  return std::sin(wavenumber(k) * h_) / h_;
}

std::string to_string(XDerivative d) {
  return d == XDerivative::spectral ? "spectral" : "centered";
}

XDerivative xderivative_from_string(const std::string& s) {
  if(s == "spectral")
    return XDerivative::spectral;
  if(s == "centered")
    return XDerivative::centered;
  throw contract_error("unknown x derivative '" + s + "'");
}

VelocityGrid::VelocityGrid(Index n, double vmin, double vmax) : n_(n), vmin_(vmin), vmax_(vmax) {
  require(n > 0, "VelocityGrid: nv must be positive");
  require(vmax > vmin, "VelocityGrid: vmax must exceed vmin");
  h_ = (vmax - vmin) / double(n);
  // Offsets (j + 1/2 - n/2) are exact in binary, so a symmetric domain gives
  // exactly antisymmetric nodes.
  double center = 0.5 * (vmin + vmax);
  nodes_.resize(n);
  for(Index j = 0; j < n; j++)
    nodes_(j) = center + (double(j) + 0.5 - 0.5 * double(n)) * h_;
  f0v_ = (-0.5 * nodes_.array().square()).exp().matrix();
  weights_ = f0v_ * h_;
  sqrt_weights_ = weights_.array().sqrt().matrix();
  ratio_up_.resize(n);
  ratio_down_.resize(n);
  for(Index j = 0; j < n; j++) {
    double vj = nodes_(j);
    double vu = j + 1 < n ? nodes_(j + 1) : vj + h_;
    double vd = j > 0 ? nodes_(j - 1) : vj - h_;
    ratio_up_(j) = std::exp(-0.5 * (vu - vj) * (vu + vj));
    ratio_down_(j) = std::exp(-0.5 * (vd - vj) * (vd + vj));
  }
}

Vec deriv_x(const SpatialGrid& g, const Vec& u) {
  check_len(u.size(), g.size(), "deriv_x");
  Mat m = u;
  return deriv_x(g, m).col(0);
}

Mat deriv_x(const SpatialGrid& g, const Mat& u) {
  check_len(u.rows(), g.size(), "deriv_x");
  if(g.derivative() == XDerivative::centered) {
    Index n = u.rows();
    double s = 0.5 / g.h();
    Mat out(n, u.cols());
    for(Index i = 0; i < n; i++)
      out.row(i) = s * (u.row((i + 1) % n) - u.row((i + n - 1) % n));
    return out;
  }
  const Fourier& fft = g.fourier();
  Index ns = fft.spectrum_size();
  std::vector<cplx> sp(ns);
  Mat out(u.rows(), u.cols());
  for(Index c = 0; c < u.cols(); c++) {
    fft.forward(u.col(c).data(), sp.data());
    for(Index k = 0; k < ns; k++)
      sp[k] *= cplx(0.0, g.wavenumber(k));
    fft.backward(sp.data(), out.col(c).data());
  }
  return out;
}

Vec deriv_v(const VelocityGrid& g, const Vec& w) {
  check_len(w.size(), g.size(), "deriv_v");
  Mat m = w;
  return deriv_v(g, m).col(0);
}

Mat deriv_v(const VelocityGrid& g, const Mat& w) {
  check_len(w.rows(), g.size(), "deriv_v");
  Index n = w.rows();
  double s = 0.5 / g.h();
  Mat out(n, w.cols());
  for(Index c = 0; c < w.cols(); c++) {
    for(Index j = 0; j < n; j++) {
      double up = j + 1 < n ? w(j + 1, c) : 0.0;
      double dn = j > 0 ? w(j - 1, c) : 0.0;
      out(j, c) = s * (up - dn);
    }
  }
  return out;
}

Mat deriv_v_weighted(const VelocityGrid& g, const Mat& w) {
  check_len(w.rows(), g.size(), "deriv_v_weighted");
  Index n = w.rows();
  double s = 0.5 / g.h();
  const Vec& ru = g.ratio_up();
  const Vec& rd = g.ratio_down();
  Mat out(n, w.cols());
  for(Index c = 0; c < w.cols(); c++) {
    for(Index j = 0; j < n; j++) {
      double up = j + 1 < n ? ru(j) * w(j + 1, c) : 0.0;
      double dn = j > 0 ? rd(j) * w(j - 1, c) : 0.0;
      out(j, c) = s * (up - dn);
    }
  }
  return out;
}

double integrate_x(const SpatialGrid& g, const Vec& u) {
  check_len(u.size(), g.size(), "integrate_x");
  return u.sum() * g.h();
}

double integrate_v(const VelocityGrid& g, const Vec& w) {
  check_len(w.size(), g.size(), "integrate_v");
  return w.sum() * g.h();
}

double inner_v(const VelocityGrid& g, const Vec& a, const Vec& b) {
  check_len(a.size(), g.size(), "inner_v");
  check_len(b.size(), g.size(), "inner_v");
  return (a.array() * b.array() * g.weights().array()).sum();
}

double inner_x(const SpatialGrid& g, const Vec& a, const Vec& b) {
  check_len(a.size(), g.size(), "inner_x");
  check_len(b.size(), g.size(), "inner_x");
  return a.dot(b) * g.h();
}

Mat gram_v(const VelocityGrid& g, const Mat& a, const Mat& b) {
  check_len(a.rows(), g.size(), "gram_v");
  check_len(b.rows(), g.size(), "gram_v");
  return a.transpose() * (g.weights().asDiagonal() * b);
}

Mat gram_x(const SpatialGrid& g, const Mat& a, const Mat& b) {
  check_len(a.rows(), g.size(), "gram_x");
  check_len(b.rows(), g.size(), "gram_x");
  return (a.transpose() * b) * g.h();
}

} // namespace dlr
