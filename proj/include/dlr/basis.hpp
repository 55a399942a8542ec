#pragma once

#include <array>
#include <vector>

#include <dlr/grid.hpp>

namespace dlr {

enum class SignConvention {
  largest_entry_positive, // each Q column's largest-magnitude entry is positive
  positive_diagonal       // plain Gram-Schmidt, R_jj >= 0
};

// Result of orthonormalizing the columns of A: A ~ Q R.
//
// Columns whose new direction is below 1e-12 of their own norm are flagged as
// rank deficient and their slot in Q is filled with a deterministic fallback
// vector (Hermite polynomials in v, Fourier modes in x). When the ambient space
// is exhausted the column is dropped instead and Q gets fewer columns; R then
// has Q.cols() rows.
struct Orthonormalized {
  Mat Q;
  Mat R;
  std::vector<Index> replaced;
  std::vector<Index> dropped;
};

inline constexpr double rank_deficiency_tol = 1e-12;

// Orthonormal in sum_j f0v_j a_j b_j h_v.
Orthonormalized weighted_orthonormalize(const VelocityGrid& g, const Mat& columns,
                                        SignConvention sign = SignConvention::largest_entry_positive);
// Orthonormal in sum_i a_i b_i h_x.
Orthonormalized unweighted_orthonormalize(const SpatialGrid& g, const Mat& columns,
                                          SignConvention sign = SignConvention::largest_entry_positive);

// Orthonormalize `columns` against an existing orthonormal `basis`, which is
// kept bit-for-bit as the leading columns of Q. R holds the coefficients of
// `columns` in the returned Q (basis rows included).
Orthonormalized weighted_extend(const VelocityGrid& g, const Mat& basis, const Mat& columns,
                                SignConvention sign = SignConvention::largest_entry_positive);
Orthonormalized unweighted_extend(const SpatialGrid& g, const Mat& basis, const Mat& columns,
                                  SignConvention sign = SignConvention::largest_entry_positive);

// Append fallback directions to an orthonormal Q until it has `cols` columns
// (or the space is exhausted).
Mat complete_v(const VelocityGrid& g, const Mat& q, Index cols);
Mat complete_x(const SpatialGrid& g, const Mat& q, Index cols);

// The m fixed velocity directions U_1 ~ 1, U_2 ~ v, U_3 ~ v^2 - 1,
// orthonormalized on the discrete grid.
struct FixedBasis {
  int m = 0;
  Mat U;                           // nv x m
  std::array<double, 3> norms{};   // |1|, |v|, |v^2-1| before normalization
  // moment(p, a) = <v^p, U_a>_v for p = 0,1,2. v^p lies in span{U_1..U_{p+1}},
  // so the p-th velocity moment of f is sum_{a<=p} moment(p,a) K_a when m > p.
  Eigen::Matrix3d moment = Eigen::Matrix3d::Zero();
  // Closed-form rows of c2 = (U_a, d_v(f0v V_j))_v for a fixed U_a. Only the
  // entries j < a can be nonzero: d_v U_a is a polynomial of lower degree.
  Mat c2_rows;                     // m x m, strictly lower triangular

  bool has_moment(int p) const { return m > p; }
};

FixedBasis build_fixed_basis(const VelocityGrid& g, int m);

} // namespace dlr
