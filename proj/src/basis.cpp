#include <dlr/basis.hpp>
#include <dlr/error.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

namespace dlr {

namespace {

// Candidate directions, already expressed in the scaled (Euclidean) space.
using Candidates = std::function<std::optional<Vec>(Index)>;

// Two passes of classical Gram-Schmidt against the first `cur` columns.
Vec project_out(const Mat& q, Index cur, Vec w, Vec* coeffs) {
  for(int pass = 0; pass < 2; pass++) {
    if(cur == 0)
      break;
    Vec c = q.leftCols(cur).transpose() * w;
    w.noalias() -= q.leftCols(cur) * c;
    if(coeffs)
      *coeffs += c;
  }
  return w;
}

// Try candidates until one has a sizeable component orthogonal to span(q).
std::optional<Vec> next_fallback(const Mat& q, Index cur, const Candidates& cand, Index& next) {
  if(cur >= q.rows())
    return std::nullopt;
  while(auto c = cand(next)) {
    next++;
    double nc = c->norm();
    if(nc == 0.0)
      continue;
    Vec w = project_out(q, cur, *c, nullptr);
    double nw = w.norm();
    if(nw > 1e-2 * nc) {
      w /= nw;
      // A third pass keeps fallback vectors orthogonal to roundoff.
      w = project_out(q, cur, w, nullptr);
      return Vec(w / w.norm());
    }
  }
  return std::nullopt;
}

// `prefix` is an orthonormal block that becomes the leading columns of Q as is.
Orthonormalized orthonormalize_euclidean(const Mat& prefix, const Mat& a, const Candidates& cand,
                                         SignConvention sign) {
  Index n = a.rows(), k = a.cols(), np = prefix.cols();
  Index cap = std::min(n, np + k);
  Orthonormalized out;
  Mat q(n, cap);
  Mat r = Mat::Zero(cap, k);
  q.leftCols(np) = prefix;
  Index cur = np, next_candidate = 0;

  for(Index j = 0; j < k; j++) {
    double na = a.col(j).norm();
    Vec coeffs = Vec::Zero(cur);
    Vec w = project_out(q, cur, a.col(j), &coeffs);
    double nw = w.norm();
    r.col(j).head(cur) = coeffs;

    if(na > 0.0 && nw > rank_deficiency_tol * na && cur < n) {
      q.col(cur) = w / nw;
      r(cur, j) = nw;
      cur++;
      continue;
    }

    auto fb = next_fallback(q, cur, cand, next_candidate);
    if(!fb) {
      out.dropped.push_back(j);
      continue;
    }
    q.col(cur) = *fb;
    r(cur, j) = fb->dot(w);
    cur++;
    out.replaced.push_back(j);
  }

  out.Q = q.leftCols(cur);
  out.R = r.topRows(cur);

  if(sign == SignConvention::largest_entry_positive) {
    for(Index c = np; c < cur; c++) {
      Index imax;
      out.Q.col(c).cwiseAbs().maxCoeff(&imax);
      if(out.Q(imax, c) < 0.0) {
        out.Q.col(c) *= -1.0;
        out.R.row(c) *= -1.0;
      }
    }
  }
  return out;
}

// Orthonormal Hermite polynomials h_k = He_k/sqrt(k!) at the nodes, then unit
// vectors. Degrees are capped since high-degree polynomials are numerically
// dependent on the grid anyway.
Candidates velocity_candidates(const VelocityGrid& g) {
  Index n = g.size();
  Index max_deg = std::min<Index>(n, 40);
  Mat h(n, max_deg);
  const Vec& v = g.nodes();
  h.col(0).setOnes();
  if(max_deg > 1)
    h.col(1) = v;
  for(Index k = 1; k + 1 < max_deg; k++)
    h.col(k + 1) = (v.cwiseProduct(h.col(k)) - std::sqrt(double(k)) * h.col(k - 1)) / std::sqrt(double(k + 1));
  Vec sw = g.sqrt_weights();
  return [h = std::move(h), sw = std::move(sw), n, max_deg](Index i) -> std::optional<Vec> {
    if(i < max_deg)
      return Vec(h.col(i).cwiseProduct(sw));
    if(i < max_deg + n)
      return Vec(Vec::Unit(n, i - max_deg));
    return std::nullopt;
  };
}

// 1, cos(k1 x), sin(k1 x), cos(k2 x), ... covering all n modes.
Candidates spatial_candidates(const SpatialGrid& g) {
  Index n = g.size();
  Vec x = g.nodes();
  double k1 = 2.0 * std::numbers::pi / g.length();
  return [x = std::move(x), n, k1](Index i) -> std::optional<Vec> {
    if(i >= n)
      return std::nullopt;
    if(i == 0)
      return Vec(Vec::Ones(n));
    Index mode = (i + 1) / 2;
    Vec out(n);
    for(Index p = 0; p < n; p++)
      out(p) = (i % 2 == 1) ? std::cos(k1 * double(mode) * x(p)) : std::sin(k1 * double(mode) * x(p));
    return out;
  };
}

Mat complete_scaled(const Mat& qs, Index cols, const Candidates& cand) {
  Index n = qs.rows();
  Index target = std::min(cols, n);
  Mat q(n, std::max(target, qs.cols()));
  q.leftCols(qs.cols()) = qs;
  Index cur = qs.cols(), next = 0;
  while(cur < target) {
    auto fb = next_fallback(q, cur, cand, next);
    if(!fb)
      break;
    q.col(cur++) = *fb;
  }
  return q.leftCols(cur);
}

} // namespace

Orthonormalized weighted_extend(const VelocityGrid& g, const Mat& basis, const Mat& columns, SignConvention sign) {
  require(columns.rows() == g.size() && basis.rows() == g.size(),
          "weighted_orthonormalize: row count does not match nv");
  const Vec& sw = g.sqrt_weights();
  Orthonormalized res = orthonormalize_euclidean(sw.asDiagonal() * basis, sw.asDiagonal() * columns,
                                                 velocity_candidates(g), sign);
  res.Q = sw.cwiseInverse().asDiagonal() * res.Q;
  res.Q.leftCols(basis.cols()) = basis;
  return res;
}

Orthonormalized unweighted_extend(const SpatialGrid& g, const Mat& basis, const Mat& columns, SignConvention sign) {
  require(columns.rows() == g.size() && basis.rows() == g.size(),
          "unweighted_orthonormalize: row count does not match nx");
  double s = std::sqrt(g.h());
  Orthonormalized res = orthonormalize_euclidean(s * basis, s * columns, spatial_candidates(g), sign);
  res.Q /= s;
  res.Q.leftCols(basis.cols()) = basis;
  return res;
}

Orthonormalized weighted_orthonormalize(const VelocityGrid& g, const Mat& columns, SignConvention sign) {
  return weighted_extend(g, Mat(g.size(), 0), columns, sign);
}

Orthonormalized unweighted_orthonormalize(const SpatialGrid& g, const Mat& columns, SignConvention sign) {
  return unweighted_extend(g, Mat(g.size(), 0), columns, sign);
}

Mat complete_v(const VelocityGrid& g, const Mat& q, Index cols) {
  require(q.rows() == g.size(), "complete_v: row count does not match nv");
  const Vec& sw = g.sqrt_weights();
  Mat qs = complete_scaled(sw.asDiagonal() * q, cols, velocity_candidates(g));
  Mat out = sw.cwiseInverse().asDiagonal() * qs;
  out.leftCols(q.cols()) = q;
  return out;
}

Mat complete_x(const SpatialGrid& g, const Mat& q, Index cols) {
  require(q.rows() == g.size(), "complete_x: row count does not match nx");
  double s = std::sqrt(g.h());
  Mat out = complete_scaled(s * q, cols, spatial_candidates(g)) / s;
  out.leftCols(q.cols()) = q;
  return out;
}

FixedBasis build_fixed_basis(const VelocityGrid& g, int m) {
  require(m >= 0, "build_fixed_basis: m must be nonnegative");
  if(m > 3)
    throw contract_error("build_fixed_basis: m > 3 is unsupported for one velocity dimension");
  require(g.size() >= 4, "build_fixed_basis: need at least 4 velocity points");

  FixedBasis fb;
  fb.m = m;
  const Vec& v = g.nodes();
  Index nv = g.size();

  // Monomials 1, v, v^2 and the generating columns 1, v, v^2-1 = P*C.
  Mat mono(nv, 3);
  mono.col(0).setOnes();
  mono.col(1) = v;
  mono.col(2) = v.cwiseProduct(v);
  Eigen::Matrix3d gen_coef;
  gen_coef << 1, 0, -1,
              0, 1,  0,
              0, 0,  1;
  Mat gen = mono * gen_coef;
  for(int a = 0; a < 3; a++)
    fb.norms[a] = std::sqrt(inner_v(g, gen.col(a), gen.col(a)));

  fb.c2_rows = Mat::Zero(m, m);
  fb.U = Mat(nv, m);
  if(m == 0)
    return fb;

  Orthonormalized on = weighted_orthonormalize(g, gen.leftCols(m), SignConvention::positive_diagonal);
  require(on.Q.cols() == m && on.replaced.empty(), "build_fixed_basis: fixed columns are dependent");
  fb.U = on.Q;

  // U = P * C * R^{-1}: monomial coefficients of every U_a.
  Mat rinv = on.R.triangularView<Eigen::Upper>().solve(Mat::Identity(m, m));
  Mat poly = gen_coef.leftCols(m) * rinv; // 3 x m

  for(int p = 0; p < 3; p++)
    for(int a = 0; a < m; a++)
      fb.moment(p, a) = inner_v(g, mono.col(p), fb.U.col(a));

  // d/dv (c0 + c1 v + c2 v^2) = c1 + 2 c2 v; integrating by parts against f0v V_j
  // gives c2[a,j] = -<U_a', V_j>_v with U_a' in span{U_1..U_{a-1}}.
  for(int a = 0; a < m; a++) {
    Vec dpoly = Vec::Zero(3);
    dpoly(0) = poly(1, a);
    dpoly(1) = 2.0 * poly(2, a);
    Vec du = mono * dpoly;
    for(int b = 0; b < a; b++)
      fb.c2_rows(a, b) = -inner_v(g, du, fb.U.col(b));
  }
  return fb;
}

} // namespace dlr
