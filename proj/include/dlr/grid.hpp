#pragma once

#include <complex>
#include <memory>
#include <string>

#include <Eigen/Core>

namespace dlr {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;

// Real-to-complex FFT of a fixed length. Plans are created once; execution is
// thread safe because every call works on caller-provided arrays.
class Fourier {
public:
  explicit Fourier(Index n);
  ~Fourier();
  Fourier(const Fourier&) = delete;
  Fourier& operator=(const Fourier&) = delete;

  Index size() const { return n_; }
  Index spectrum_size() const { return n_ / 2 + 1; }

  // Unnormalized forward transform: out has spectrum_size() entries.
  void forward(const double* in, cplx* out) const;
  // Inverse including the 1/n normalization. `in` is overwritten.
  void backward(cplx* in, double* out) const;

private:
  Index n_;
  void* plan_fwd_;
  void* plan_bwd_;
};

// Discrete d/dx on the periodic grid. Both are skew-symmetric with zero
// column sums.
enum class XDerivative {
  spectral, // i k in Fourier space, Nyquist mode zeroed
  centered  // (u_{i+1} - u_{i-1}) / (2h)
};

std::string to_string(XDerivative d);
XDerivative xderivative_from_string(const std::string& s);

// Periodic grid x_i = i*h, i = 0..n-1, on [0, L).
class SpatialGrid {
public:
  SpatialGrid(Index n, double length, XDerivative d = XDerivative::spectral);

  Index size() const { return n_; }
  double h() const { return h_; }
  // Stored as n*h so that h*n == length() holds exactly.
  double length() const { return length_; }
  double x(Index i) const { return nodes_(i); }
  const Vec& nodes() const { return nodes_; }
  // Angular wave number of spectral index k; the Nyquist index maps to 0.
  double wavenumber(Index k) const;
  // Fourier symbol of deriv_x divided by i: wavenumber(k) or sin(k h)/h.
  double symbol(Index k) const;
  XDerivative derivative() const { return deriv_; }
  const Fourier& fourier() const { return *fft_; }

private:
  Index n_;
  XDerivative deriv_;
  double h_;
  double length_;
  Vec nodes_;
  std::shared_ptr<const Fourier> fft_;
};

// Cell-centered velocity grid on [vmin, vmax] with Gaussian weight
// f0v = exp(-v^2/2) sampled at the nodes.
class VelocityGrid {
public:
  VelocityGrid(Index n, double vmin, double vmax);

  Index size() const { return n_; }
  double h() const { return h_; }
  double vmin() const { return vmin_; }
  double vmax() const { return vmax_; }
  double v(Index j) const { return nodes_(j); }
  const Vec& nodes() const { return nodes_; }
  const Vec& f0v() const { return f0v_; }
  // f0v*h, the quadrature weight of the weighted inner product.
  const Vec& weights() const { return weights_; }
  const Vec& sqrt_weights() const { return sqrt_weights_; }
  // f0v(v_{j+1})/f0v(v_j) and f0v(v_{j-1})/f0v(v_j) evaluated in closed form.
  const Vec& ratio_up() const { return ratio_up_; }
  const Vec& ratio_down() const { return ratio_down_; }

private:
  Index n_;
  double vmin_, vmax_, h_;
  Vec nodes_, f0v_, weights_, sqrt_weights_, ratio_up_, ratio_down_;
};

// Fourier spectral derivative; the Nyquist mode is discarded.
Vec deriv_x(const SpatialGrid& g, const Vec& u);
Mat deriv_x(const SpatialGrid& g, const Mat& u);

// Centered differences with zero ghost values outside the velocity domain.
Vec deriv_v(const VelocityGrid& g, const Vec& w);
Mat deriv_v(const VelocityGrid& g, const Mat& w);

// deriv_v(f0v*w)/f0v, evaluated without dividing by tail values of f0v.
Mat deriv_v_weighted(const VelocityGrid& g, const Mat& w);

double integrate_x(const SpatialGrid& g, const Vec& u);
double integrate_v(const VelocityGrid& g, const Vec& w);

// sum_j f0v_j a_j b_j h_v
double inner_v(const VelocityGrid& g, const Vec& a, const Vec& b);
// sum_i a_i b_i h_x
double inner_x(const SpatialGrid& g, const Vec& a, const Vec& b);

// Matrices of pairwise inner products, A^T W B.
Mat gram_v(const VelocityGrid& g, const Mat& a, const Mat& b);
Mat gram_x(const SpatialGrid& g, const Mat& a, const Mat& b);

} // namespace dlr
